"""Canonical constructions: poset/monoid categories, products, coslices,
categories of elements.

Builders produce closed composition tables directly, so the results are
valid by construction; validate_category is only needed for foreign input.
Object and morphism order is the documented construction sequence, which is
what makes witnesses reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (
    Copresheaf,
    FiniteCategory,
    FinitePoset,
    Functor,
    validate_copresheaf,
    MAX_MORPHISMS,
    MAX_OBJECTS,
)
from .errors import NotAMonoid, SizeBoundExceeded


def build_poset_category(poset: FinitePoset) -> FiniteCategory:
    """The thin category of a poset: one morphism a -> b iff a <= b.

    Morphism order: identities (object order) first, then strict pairs in
    (i, j) order, named ``le{i}_{j}``.
    """
    n = poset.n
    names = [f"id_{poset.elements[i]}" for i in range(n)]
    dom = list(range(n))
    cod = list(range(n))
    ref: dict[tuple[int, int], int] = {(i, i): i for i in range(n)}
    for i, j in poset.strict_pairs():
        ref[(i, j)] = len(names)
        names.append(f"le{i}_{j}")
        dom.append(i)
        cod.append(j)
    comp = {}
    for (a, b), f in ref.items():
        for (b2, c), g in ref.items():
            if b2 == b:
                comp[(g, f)] = ref[(a, c)]
    return FiniteCategory(
        tuple(poset.elements), tuple(names), tuple(dom), tuple(cod),
        tuple(range(n)), comp,
    )


def build_monoid_category(
    elements: Sequence[str], unit: int, table: Sequence[Sequence[int]]
) -> FiniteCategory:
    """One-object category whose endomorphisms are the monoid elements.

    ``table[a][b]`` is a*b, read as "a after b".  Raises NotAMonoid when the
    table is not associative or the unit is not two-sided.
    """
    k = len(elements)
    if len(table) != k or any(len(row) != k for row in table):
        raise NotAMonoid("table is not square")
    if any(not 0 <= v < k for row in table for v in row):
        raise NotAMonoid("table entry out of range")
    if not 0 <= unit < k:
        raise NotAMonoid("unit out of range")
    for a in range(k):
        if table[unit][a] != a or table[a][unit] != a:
            raise NotAMonoid(f"unit law fails at element {elements[a]}")
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAMonoid(
                        f"associativity fails at ({elements[a]}, {elements[b]}, {elements[c]})"
                    )
    comp = {(g, f): table[g][f] for g in range(k) for f in range(k)}
    return FiniteCategory(
        ("pt",), tuple(elements), (0,) * k, (0,) * k, (unit,), comp
    )


def _mixed_radix_encode(idx: Sequence[int], sizes: Sequence[int]) -> int:
    v = 0
    for i, s in zip(idx, sizes):
        v = v * s + i
    return v


def _mixed_radix_decode(v: int, sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    for s in reversed(sizes):
        out.append(v % s)
        v //= s
    return tuple(reversed(out))


@dataclass(frozen=True)
class ProductResult:
    """Product category plus the projection functors and index codecs."""

    category: FiniteCategory
    projections: tuple[Functor, ...]
    factors: tuple[FiniteCategory, ...]

    def __iter__(self):
        return iter((self.category, self.projections))

    def object_index(self, components: Sequence[int]) -> int:
        return _mixed_radix_encode(components, [c.n_objects for c in self.factors])

    def object_components(self, o: int) -> tuple[int, ...]:
        return _mixed_radix_decode(o, [c.n_objects for c in self.factors])

    def morphism_index(self, components: Sequence[int]) -> int:
        return _mixed_radix_encode(components, [c.n_mors for c in self.factors])

    def morphism_components(self, m: int) -> tuple[int, ...]:
        return _mixed_radix_decode(m, [c.n_mors for c in self.factors])


def product_category(
    factors: Sequence[FiniteCategory],
    *,
    max_objects: int = MAX_OBJECTS,
    max_morphisms: int = MAX_MORPHISMS,
) -> ProductResult:
    """Product of categories: tuple objects/morphisms, componentwise tables.

    Objects and morphisms are ordered lexicographically by component refs.
    Raises SizeBoundExceeded when the result would exceed the caps.
    """
    if not factors:
        raise ValueError("need at least one factor")
    n_obj = 1
    n_mor = 1
    for c in factors:
        n_obj *= c.n_objects
        n_mor *= c.n_mors
    if n_obj > max_objects or n_mor > max_morphisms:
        raise SizeBoundExceeded(
            f"product would have {n_obj} objects / {n_mor} morphisms"
        )
    obj_tuples = list(itertools.product(*(range(c.n_objects) for c in factors)))
    mor_tuples = list(itertools.product(*(range(c.n_mors) for c in factors)))
    obj_names = tuple("o" + "_".join(map(str, t)) for t in obj_tuples)
    mor_names = tuple("m" + "_".join(map(str, t)) for t in mor_tuples)
    obj_sizes = [c.n_objects for c in factors]
    dom = tuple(
        _mixed_radix_encode([c.mor_dom[m] for c, m in zip(factors, t)], obj_sizes)
        for t in mor_tuples
    )
    cod = tuple(
        _mixed_radix_encode([c.mor_cod[m] for c, m in zip(factors, t)], obj_sizes)
        for t in mor_tuples
    )
    mor_sizes = [c.n_mors for c in factors]
    identity = tuple(
        _mixed_radix_encode([c.identity[o] for c, o in zip(factors, t)], mor_sizes)
        for t in obj_tuples
    )
    comp = {}
    for gi, gt in enumerate(mor_tuples):
        for fi, ft in enumerate(mor_tuples):
            if cod[fi] == dom[gi]:
                comp[(gi, fi)] = _mixed_radix_encode(
                    [c.comp[(g, f)] for c, g, f in zip(factors, gt, ft)], mor_sizes
                )
    cat = FiniteCategory(obj_names, mor_names, dom, cod, identity, comp)
    projections = tuple(
        Functor(
            cat,
            c,
            tuple(t[i] for t in obj_tuples),
            tuple(t[i] for t in mor_tuples),
        )
        for i, c in enumerate(factors)
    )
    return ProductResult(cat, projections, tuple(factors))


@dataclass(frozen=True)
class CosliceResult:
    """Coslice category under an object, with the forgetful functor.

    Objects are the morphisms f with dom(f) = X, in ascending ref order; a
    morphism from object f'' to object f' is each eta with eta . f'' = f'.
    """

    category: FiniteCategory
    forgetful: Functor
    object_mors: tuple[int, ...]
    morphism_triples: tuple[tuple[int, int, int], ...]  # (src_obj, tgt_obj, eta)

    def __iter__(self):
        return iter((self.category, self.forgetful))

    def object_index(self, f: int) -> int:
        return self.object_mors.index(f)

    def morphism_index(self, src: int, tgt: int, eta: int) -> int:
        return self.morphism_triples.index((src, tgt, eta))


def coslice_category(cat: FiniteCategory, x: int) -> CosliceResult:
    """Coslice of ``cat`` under object ``x`` and its forgetful functor."""
    obj_mors = tuple(m for m in range(cat.n_mors) if cat.mor_dom[m] == x)
    n = len(obj_mors)
    triples: list[tuple[int, int, int]] = []
    ref: dict[tuple[int, int, int], int] = {}
    for i in range(n):
        for j in range(n):
            fi, fj = obj_mors[i], obj_mors[j]
            for eta in cat.hom(cat.mor_cod[fi], cat.mor_cod[fj]):
                if cat.comp[(eta, fi)] == fj:
                    ref[(i, j, eta)] = len(triples)
                    triples.append((i, j, eta))
    identity = tuple(
        ref[(i, i, cat.identity[cat.mor_cod[obj_mors[i]]])] for i in range(n)
    )
    comp = {}
    for (i, j, e1), r1 in ref.items():
        for (j2, k, e2), r2 in ref.items():
            if j2 == j:
                comp[(r2, r1)] = ref[(i, k, cat.comp[(e2, e1)])]
    names = tuple(f"o_{cat.mor_names[f]}" for f in obj_mors)
    mor_names = tuple(f"t{i}_{j}_{cat.mor_names[e]}" for (i, j, e) in triples)
    dom = tuple(t[0] for t in triples)
    cod = tuple(t[1] for t in triples)
    coslice = FiniteCategory(names, mor_names, dom, cod, identity, comp)
    forgetful = Functor(
        coslice,
        cat,
        tuple(cat.mor_cod[f] for f in obj_mors),
        tuple(t[2] for t in triples),
    )
    return CosliceResult(coslice, forgetful, obj_mors, tuple(triples))


@dataclass(frozen=True)
class ElementsResult:
    """Category of elements of a copresheaf, with its projection functor.

    Objects are pairs (Q, x in H(Q)); a morphism (Q'', x'') -> (Q', x') is
    each eta: Q'' -> Q' with action(eta)(x'') = x'.
    """

    category: FiniteCategory
    forgetful: Functor
    objects: tuple[tuple[int, int], ...]
    morphism_triples: tuple[tuple[int, int, int], ...]

    def __iter__(self):
        return iter((self.category, self.forgetful))

    def object_index(self, q: int, x: int) -> int:
        return self.objects.index((q, x))


def elements_category(h: Copresheaf) -> ElementsResult:
    """Category of elements of ``h`` (finite model of the comma category)."""
    # Revalidate: foreign Copresheaf values may carry functoriality bugs.
    h = validate_copresheaf(h.base, h.fibers, h.action)
    base = h.base
    objects: list[tuple[int, int]] = []
    for q in range(base.n_objects):
        for x in range(len(h.fibers[q])):
            objects.append((q, x))
    n = len(objects)
    triples: list[tuple[int, int, int]] = []
    ref: dict[tuple[int, int, int], int] = {}
    for i in range(n):
        for j in range(n):
            qi, xi = objects[i]
            qj, xj = objects[j]
            for eta in base.hom(qi, qj):
                if h.action[eta][xi] == xj:
                    ref[(i, j, eta)] = len(triples)
                    triples.append((i, j, eta))
    identity = tuple(ref[(i, i, base.identity[objects[i][0]])] for i in range(n))
    comp = {}
    for (i, j, e1), r1 in ref.items():
        for (j2, k, e2), r2 in ref.items():
            if j2 == j:
                comp[(r2, r1)] = ref[(i, k, base.comp[(e2, e1)])]
    names = tuple(
        f"x{q}_{h.fibers[q][x]}" for (q, x) in objects
    )
    mor_names = tuple(f"e{i}_{j}_{base.mor_names[e]}" for (i, j, e) in triples)
    dom = tuple(t[0] for t in triples)
    cod = tuple(t[1] for t in triples)
    cat = FiniteCategory(names, mor_names, dom, cod, identity, comp)
    forgetful = Functor(
        cat,
        base,
        tuple(q for (q, _) in objects),
        tuple(t[2] for t in triples),
    )
    return ElementsResult(cat, forgetful, tuple(objects), tuple(triples))


def representable_copresheaf(cat: FiniteCategory, p: int) -> Copresheaf:
    """hom(P, -) with action by post-composition."""
    fibers = [
        [cat.mor_names[m] for m in cat.hom(p, q)] for q in range(cat.n_objects)
    ]
    index = [
        {m: i for i, m in enumerate(cat.hom(p, q))} for q in range(cat.n_objects)
    ]
    action = []
    for m in range(cat.n_mors):
        d, c = cat.mor_dom[m], cat.mor_cod[m]
        action.append([index[c][cat.comp[(m, f)]] for f in cat.hom(p, d)])
    return validate_copresheaf(cat, fibers, action)


def add_initial_object(cat: FiniteCategory, name: str = "bot") -> FiniteCategory:
    """Adjoin a fresh initial object with one morphism to every object.

    The new object, its identity, and the unique morphisms are appended
    after the existing tables.
    """
    n_obj = cat.n_objects
    n_mor = cat.n_mors
    if name in cat.object_names:
        name = name + "_"
    obj_names = cat.object_names + (name,)
    bot = n_obj
    mor_names = list(cat.mor_names) + [f"id_{name}"]
    dom = list(cat.mor_dom) + [bot]
    cod = list(cat.mor_cod) + [bot]
    bang = {}
    for a in range(n_obj):
        bang[a] = len(mor_names)
        mor_names.append(f"bang_{cat.object_names[a]}")
        dom.append(bot)
        cod.append(a)
    identity = cat.identity + (n_mor,)
    comp = dict(cat.comp)
    comp[(n_mor, n_mor)] = n_mor
    for a in range(n_obj):
        comp[(bang[a], n_mor)] = bang[a]
    for f in range(n_mor):
        comp[(f, bang[cat.mor_dom[f]])] = bang[cat.mor_cod[f]]
    return FiniteCategory(
        obj_names, tuple(mor_names), tuple(dom), tuple(cod), identity, comp
    )


def canonical_category(cat: FiniteCategory) -> tuple[FiniteCategory, tuple[int, ...]]:
    """Reorder morphisms so identities come first (object order) and rename
    identities ``id_{object}``; the DSL's normal form.

    Returns (category, mor_perm) where mor_perm[old_ref] = new_ref.
    """
    order = list(cat.identity) + [
        m for m in range(cat.n_mors) if not cat.is_identity(m)
    ]
    perm = [0] * cat.n_mors
    for new, old in enumerate(order):
        perm[old] = new
    names = []
    used = set()
    for new, old in enumerate(order):
        if new < cat.n_objects:
            nm = f"id_{cat.object_names[new]}"
        else:
            nm = cat.mor_names[old]
            if nm in used or nm.startswith("id_"):
                nm = f"f{new}"
        while nm in used:
            nm = nm + "_"
        used.add(nm)
        names.append(nm)
    dom = tuple(cat.mor_dom[old] for old in order)
    cod = tuple(cat.mor_cod[old] for old in order)
    identity = tuple(range(cat.n_objects))
    comp = {
        (perm[g], perm[f]): perm[h] for (g, f), h in cat.comp.items()
    }
    out = FiniteCategory(cat.object_names, tuple(names), dom, cod, identity, comp)
    return out, tuple(perm)
