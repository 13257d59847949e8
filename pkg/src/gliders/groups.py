"""Small finite groups as multiplication tables, and isomorphism testing."""
from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Hashable, Sequence


def closure(gens: Sequence[Hashable], mul: Callable, one: Hashable) -> tuple[list, list[list[int]]]:
    """Elements generated by gens (identity first, BFS order) and the table."""
    elems = [one]
    index = {one: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            h = mul(elems[i], g)
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
        i += 1
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    return elems, table


def _perm_mul(p, q):
    # (p q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def _quat_mul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def cyclic(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def klein_four() -> list[list[int]]:
    els = list(product(range(2), repeat=2))
    return [[els.index(((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)) for b in els] for a in els]


def s3_elements() -> list[tuple]:
    """Permutations of {0,1,2}, identity first, in lexicographic order."""
    return list(permutations(range(3)))


def symmetric3() -> list[list[int]]:
    els = s3_elements()
    return [[els.index(_perm_mul(p, q)) for q in els] for p in els]


def dihedral8() -> tuple[list, list[list[int]]]:
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    return closure([r, s], _perm_mul, (0, 1, 2, 3))


def quaternion8() -> tuple[list, list[list[int]]]:
    i = (0, 1, 0, 0)
    j = (0, 0, 1, 0)
    return closure([i, j], _quat_mul, (1, 0, 0, 0))


def group_tables() -> dict[str, list[list[int]]]:
    return {"C1": cyclic(1), "C2": cyclic(2), "C4": cyclic(4), "C2xC2": klein_four(),
            "S3": symmetric3(), "D8": dihedral8()[1], "Q8": quaternion8()[1]}


def identity_of(t: Sequence[Sequence[int]]) -> int:
    n = len(t)
    return next(e for e in range(n) if all(t[e][g] == g for g in range(n)))


def element_orders(t: Sequence[Sequence[int]]) -> list[int]:
    e = identity_of(t)
    out = []
    for g in range(len(t)):
        k, h = 1, g
        while h != e:
            h = t[h][g]
            k += 1
        out.append(k)
    return out


def involution_count(t: Sequence[Sequence[int]]) -> int:
    return sum(1 for k in element_orders(t) if k == 2)


def _generators(t) -> list[int]:
    """A small generating set, chosen greedily by decreasing order."""
    n = len(t)
    e = identity_of(t)
    orders = element_orders(t)
    span = {e}
    gens = []
    for g in sorted(range(n), key=lambda g: (-orders[g], g)):
        if g in span:
            continue
        gens.append(g)
        span = set(_subgroup(t, gens))
        if len(span) == n:
            break
    return gens


def _subgroup(t, gens) -> list[int]:
    e = identity_of(t)
    seen = [e]
    s = {e}
    i = 0
    while i < len(seen):
        for g in gens:
            h = t[seen[i]][g]
            if h not in s:
                s.add(h)
                seen.append(h)
        i += 1
    return seen


def groups_isomorphic(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> bool:
    """Brute-force isomorphism test, pruning candidate images by element order."""
    n = len(t1)
    if n != len(t2):
        return False
    o1, o2 = element_orders(t1), element_orders(t2)
    if sorted(o1) != sorted(o2):
        return False
    gens = _generators(t1)
    e1, e2 = identity_of(t1), identity_of(t2)
    cands = [[h for h in range(n) if o2[h] == o1[g]] for g in gens]
    for imgs in product(*cands):
        phi = {e1: e2}
        for g, h in zip(gens, imgs):
            if phi.setdefault(g, h) != h:
                break
        else:
            # extend along words in the generators and check consistency
            queue = list(phi)
            ok = True
            i = 0
            while ok and i < len(queue):
                x = queue[i]
                i += 1
                for g in gens:
                    y = t1[x][g]
                    img = t2[phi[x]][phi[g]]
                    if y in phi:
                        if phi[y] != img:
                            ok = False
                            break
                    else:
                        phi[y] = img
                        queue.append(y)
            if not ok or len(phi) != n or len(set(phi.values())) != n:
                continue
            if all(phi[t1[a][b]] == t2[phi[a]][phi[b]] for a in range(n) for b in range(n)):
                return True
    return False
