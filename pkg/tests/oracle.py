"""Brute-force exterior algebra oracle, independent of the package engine.

Forms are dicts mapping sorted index tuples to integer coefficients; wedge
products are expanded term by term with explicit permutation signs.  Slow
and simple on purpose: this is the reference the fast Pfaffian path is
measured against.
"""


def two_form_dict(eta):
    out = {}
    m = 2 * eta.n
    for i in range(m):
        for j in range(i + 1, m):
            if eta.mat[i][j]:
                out[(i, j)] = eta.mat[i][j]
    return out


def merge_sign(a, b):
    """Sign of concatenating two sorted index tuples, or None on overlap."""
    joint = set(a) & set(b)
    if joint:
        return None
    inversions = 0
    for x in a:
        inversions += sum(1 for y in b if y < x)
    return -1 if inversions % 2 else 1


def wedge(f, g):
    out = {}
    for a, ca in f.items():
        for b, cb in g.items():
            sign = merge_sign(a, b)
            if sign is None:
                continue
            key = tuple(sorted(a + b))
            val = out.get(key, 0) + sign * ca * cb
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def wedge_power(f, r):
    if r == 0:
        return {(): 1}
    acc = dict(f)
    for _ in range(r - 1):
        acc = wedge(acc, f)
    return acc


def volume_sign(n):
    return -1 if (n * (n + 1) // 2) % 2 else 1


def mixed_intersection_oracle(factors):
    """Intersection number in volume units by full expansion."""
    n = factors[0][0].n
    acc = {(): 1}
    for eta, r in factors:
        acc = wedge(acc, wedge_power(two_form_dict(eta), r))
    top = tuple(range(2 * n))
    return volume_sign(n) * acc.get(top, 0)
