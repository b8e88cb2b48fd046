"""Shared test fixtures: small hand-built categories, naive quantifier
oracles (independent transcriptions used to cross-check the optimized
implementations), and a backtracking table-isomorphism checker."""

from __future__ import annotations

import itertools
from typing import Optional

from movcat.builders import build_poset_category
from movcat.core import FiniteCategory, make_poset, validate_functor
from movcat.errors import ValidationFailed


def chain(n: int) -> FiniteCategory:
    return build_poset_category(
        make_poset([f"a{i}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])
    )


def v_poset_category() -> FiniteCategory:
    """Two minimal elements under a common top (a < c, b < c)."""
    return build_poset_category(make_poset(["a", "b", "c"], [(0, 2), (1, 2)]))


def antichain(n: int) -> FiniteCategory:
    return build_poset_category(make_poset([f"a{i}" for i in range(n)], []))


def pointed_sets_2() -> FiniteCategory:
    """Pointed sets of size at most 2: objects P1 (point) and P2, with the
    base-point preserving maps.  hom(P2,P2) = {identity, collapse}."""
    objects = ["P1", "P2"]
    mors = [
        ("id_P1", 0, 0),
        ("id_P2", 1, 1),
        ("incl", 0, 1),
        ("crush", 1, 0),
        ("coll", 1, 1),  # collapse to the base point
    ]
    from movcat.core import validate_category

    comp = {
        (2, 3): 4,  # incl . crush = coll
        (3, 2): 0,  # crush . incl = id_P1
        (4, 4): 4,
        (3, 4): 3,
        (4, 2): 2,
        (0, 0): 0,
        (1, 1): 1,
        (2, 0): 2,
        (1, 2): 2,
        (3, 1): 3,
        (0, 3): 3,
        (4, 1): 4,
        (1, 4): 4,
    }
    return validate_category(objects, mors, [0, 1], comp)


# ---------------------------------------------------------------------------
# Naive oracles


def naive_strongly_movable(k: FiniteCategory) -> bool:
    """Direct transcription of the movability quantifiers, no shortcuts."""
    for x in range(k.n_objects):
        ps = [p for p in range(k.n_mors) if k.mor_cod[p] == x]
        exists = False
        for mobj in range(k.n_objects):
            for m in k.hom(mobj, x):
                if all(
                    any(
                        k.comp[(p, u)] == m
                        for u in k.hom(mobj, k.mor_dom[p])
                    )
                    for p in ps
                ):
                    exists = True
        if not exists:
            return False
    return True


def naive_movable_wrt(k, l, phi) -> bool:
    for x in range(k.n_objects):
        ps = [p for p in range(k.n_mors) if k.mor_cod[p] == x]
        exists = False
        for mobj in range(k.n_objects):
            for m in k.hom(mobj, x):
                if all(
                    any(
                        l.comp[(phi.mor_map[p], u)] == phi.mor_map[m]
                        for u in l.hom(phi.obj_map[mobj], phi.obj_map[k.mor_dom[p]])
                    )
                    for p in ps
                ):
                    exists = True
        if not exists:
            return False
    return True


def naive_functors(k: FiniteCategory, l: FiniteCategory) -> list:
    """Generate-and-filter functor enumeration (small inputs only)."""
    out = []
    for obj_map in itertools.product(range(l.n_objects), repeat=k.n_objects):
        candidates = [
            [
                t
                for t in range(l.n_mors)
                if l.mor_dom[t] == obj_map[k.mor_dom[m]]
                and l.mor_cod[t] == obj_map[k.mor_cod[m]]
            ]
            for m in range(k.n_mors)
        ]
        for mor_map in itertools.product(*candidates):
            try:
                out.append(validate_functor(k, l, list(obj_map), list(mor_map)))
            except ValidationFailed:
                pass
    return out


def naive_nat_trans_count(f, g) -> int:
    k, l = f.source, f.target
    count = 0
    for comps in itertools.product(
        *(
            l.hom(f.obj_map[a], g.obj_map[a])
            for a in range(k.n_objects)
        )
    ):
        ok = all(
            l.comp[(comps[k.mor_cod[m]], f.mor_map[m])]
            == l.comp[(g.mor_map[m], comps[k.mor_dom[m]])]
            for m in range(k.n_mors)
        )
        count += ok
    return count


# ---------------------------------------------------------------------------
# Table isomorphism (backtracking with hom-size pruning)


def find_isomorphism(
    c1: FiniteCategory, c2: FiniteCategory
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Object and morphism bijections preserving dom/cod/identity/comp, or
    None.  Test-scale only."""
    if c1.n_objects != c2.n_objects or c1.n_mors != c2.n_mors:
        return None

    def extend(obj_map: dict) -> Optional[dict]:
        if len(obj_map) == c1.n_objects:
            return obj_map
        a = len(obj_map)
        used = set(obj_map.values())
        for b in range(c2.n_objects):
            if b in used:
                continue
            ok = all(
                len(c1.hom(x, a)) == len(c2.hom(obj_map[x], b))
                and len(c1.hom(a, x)) == len(c2.hom(b, obj_map[x]))
                for x in obj_map
            ) and len(c1.hom(a, a)) == len(c2.hom(b, b))
            if not ok:
                continue
            res = extend({**obj_map, a: b})
            if res is not None:
                return res
        return None

    def mor_extend(obj_map, mor_map: dict) -> Optional[dict]:
        if len(mor_map) == c1.n_mors:
            return mor_map
        m = len(mor_map)
        used = set(mor_map.values())
        for t in c2.hom(obj_map[c1.mor_dom[m]], obj_map[c1.mor_cod[m]]):
            if t in used:
                continue
            if c1.is_identity(m) != c2.is_identity(t):
                continue
            good = True
            for (g, f), h in c1.comp.items():
                if g in mor_map or g == m:
                    tg = mor_map.get(g, t)
                    if f in mor_map or f == m:
                        tf = mor_map.get(f, t)
                        if h in mor_map or h == m:
                            th = mor_map.get(h, t)
                            if c2.comp.get((tg, tf)) != th:
                                good = False
                                break
            if not good:
                continue
            res = mor_extend(obj_map, {**mor_map, m: t})
            if res is not None:
                return res
        return None

    # Try every hom-size-compatible object bijection.
    for perm in itertools.permutations(range(c2.n_objects)):
        obj_map = dict(enumerate(perm))
        if any(
            len(c1.hom(a, b)) != len(c2.hom(obj_map[a], obj_map[b]))
            for a in range(c1.n_objects)
            for b in range(c1.n_objects)
        ):
            continue
        mm = mor_extend(obj_map, {})
        if mm is not None:
            return (
                tuple(obj_map[a] for a in range(c1.n_objects)),
                tuple(mm[m] for m in range(c1.n_mors)),
            )
    return None
