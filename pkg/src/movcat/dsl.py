"""The `.cat` text format: parser and canonical serializer.

A document is an ordered list of named entities (poset, monoid, category,
functor, nattrans, copresheaf, system, coproducts); later entities refer to
earlier ones by name.  The grammar is ASCII and line-oriented with `;`
separators and `#` comments.  Parsing is followed by validation of every
entity, so no parse ever accepts an entity its validator rejects.

Canonical serialization: entities in document order (which is a dependency
order), members in ref order, one declaration per line.  Categories are
stored in normal form (identities first, named ``id_<object>``), which is
what makes parse . serialize the identity on tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .builders import (
    build_monoid_category,
    build_poset_category,
    canonical_category,
)
from .core import (
    Copresheaf,
    FiniteCategory,
    FinitePoset,
    Functor,
    NaturalTransformation,
    make_poset,
    validate_category,
    validate_copresheaf,
    validate_functor,
    validate_nat_trans,
)
from .errors import (
    DslSyntaxError,
    UnresolvedReference,
    ValidationFailed,
    Violation,
)
from .search import CoproductDesignation, validate_designation
from .systems import InverseSystem, SystemCone, make_cone, validate_system

_KEYWORDS = (
    "poset",
    "monoid",
    "category",
    "functor",
    "nattrans",
    "copresheaf",
    "system",
    "coproducts",
)


# ---------------------------------------------------------------------------
# Entities


@dataclass(frozen=True)
class PosetEntity:
    name: str
    poset: FinitePoset


@dataclass(frozen=True)
class MonoidEntity:
    name: str
    elements: tuple[str, ...]
    unit: int
    table: tuple[tuple[int, ...], ...]
    category: FiniteCategory


@dataclass(frozen=True)
class CategoryEntity:
    name: str
    category: FiniteCategory


@dataclass(frozen=True)
class FunctorEntity:
    name: str
    source_name: str
    target_name: str
    functor: Functor


@dataclass(frozen=True)
class NatTransEntity:
    name: str
    from_name: str
    to_name: str
    transformation: NaturalTransformation


@dataclass(frozen=True)
class CopresheafEntity:
    name: str
    base_name: str
    copresheaf: Copresheaf


@dataclass(frozen=True)
class SystemEntity:
    name: str
    category_name: str
    poset_name: str
    copresheaf_name: Optional[str]
    system: InverseSystem
    cone: Optional[SystemCone]


@dataclass(frozen=True)
class CoproductsEntity:
    name: str
    base_name: str
    designation: CoproductDesignation


Entity = Union[
    PosetEntity,
    MonoidEntity,
    CategoryEntity,
    FunctorEntity,
    NatTransEntity,
    CopresheafEntity,
    SystemEntity,
    CoproductsEntity,
]


@dataclass
class Document:
    """Ordered, name-resolved collection of entities."""

    entities: list = field(default_factory=list)

    def __getitem__(self, name: str) -> Entity:
        for e in self.entities:
            if e.name == name:
                return e
        raise UnresolvedReference(name)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entities)

    def add(self, entity: Entity) -> None:
        if entity.name in self:
            raise ValidationFailed(
                "document", [Violation("DuplicateName", entity.name)]
            )
        self.entities.append(entity)

    def category_of(self, name: str) -> FiniteCategory:
        """The category denoted by a category, poset, or monoid entity."""
        e = self[name]
        if isinstance(e, CategoryEntity):
            return e.category
        if isinstance(e, PosetEntity):
            return build_poset_category(e.poset)
        if isinstance(e, MonoidEntity):
            return e.category
        raise UnresolvedReference(f"{name} does not denote a category")

    def __eq__(self, other) -> bool:
        return isinstance(other, Document) and self.entities == other.entities


def make_category_entity(name: str, category: FiniteCategory) -> CategoryEntity:
    """Wrap a category for a document, normalizing it to DSL form."""
    canon, _ = canonical_category(category)
    return CategoryEntity(name, canon)


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident" | "punct" | "eof"
    value: str
    line: int
    col: int


_PUNCT2 = ("->", "=>")
_PUNCT1 = ";{}:="


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text[i : i + 2] in _PUNCT2:
            toks.append(_Token("punct", text[i : i + 2], line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT1:
            toks.append(_Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise DslSyntaxError(line, col, "identifier or punctuation", ch)
    toks.append(_Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def next(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_punct(self, value: str) -> _Token:
        t = self.next()
        if t.kind != "punct" or t.value != value:
            raise DslSyntaxError(t.line, t.col, repr(value), t.value or "<eof>")
        return t

    def expect_ident(self, what: str = "identifier") -> _Token:
        t = self.next()
        if t.kind != "ident":
            raise DslSyntaxError(t.line, t.col, what, t.value or "<eof>")
        return t

    def at_ident(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "ident" and t.value == value

    def take_ident(self, value: str) -> bool:
        if self.at_ident(value):
            self.next()
            return True
        return False

    def end_stmt(self) -> None:
        """Consume a `;` terminator; the last one before `}` may be omitted."""
        t = self.peek()
        if t.kind == "punct" and t.value == ";":
            self.next()
            return
        if t.kind == "punct" and t.value == "}":
            return
        raise DslSyntaxError(t.line, t.col, "';'", t.value or "<eof>")

    def ident_list(self) -> list[str]:
        out = [self.expect_ident().value]
        while self.peek().kind == "ident":
            out.append(self.next().value)
        return out


def _resolve(mapping: dict, name: str, tok: _Token, what: str) -> int:
    if name not in mapping:
        raise UnresolvedReference(f"{what} {name!r} (line {tok.line})")
    return mapping[name]


# ---------------------------------------------------------------------------
# Entity parsers


def _parse_poset(p: _Parser) -> PosetEntity:
    name = p.expect_ident("poset name").value
    p.expect_punct("{")
    p.expect_ident("elements")  # keyword checked loosely below
    elems = p.ident_list()
    p.end_stmt()
    idx = {e: i for i, e in enumerate(elems)}
    pairs = []
    while p.at_ident("leq"):
        p.next()
        a = p.expect_ident()
        b = p.expect_ident()
        p.end_stmt()
        pairs.append((_resolve(idx, a.value, a, "element"),
                      _resolve(idx, b.value, b, "element")))
    p.expect_punct("}")
    return PosetEntity(name, make_poset(elems, pairs))


def _parse_monoid(p: _Parser) -> MonoidEntity:
    name = p.expect_ident("monoid name").value
    p.expect_punct("{")
    p.expect_ident("elements")
    elems = p.ident_list()
    p.end_stmt()
    idx = {e: i for i, e in enumerate(elems)}
    p.expect_ident("unit")
    ut = p.expect_ident()
    unit = _resolve(idx, ut.value, ut, "element")
    p.end_stmt()
    k = len(elems)
    table: list[list[Optional[int]]] = [[None] * k for _ in range(k)]
    while p.at_ident("mul"):
        p.next()
        a = p.expect_ident()
        b = p.expect_ident()
        p.expect_punct("=")
        c = p.expect_ident()
        p.end_stmt()
        table[_resolve(idx, a.value, a, "element")][
            _resolve(idx, b.value, b, "element")
        ] = _resolve(idx, c.value, c, "element")
    p.expect_punct("}")
    missing = [
        (elems[i], elems[j])
        for i in range(k)
        for j in range(k)
        if table[i][j] is None
    ]
    if missing:
        raise ValidationFailed(
            "monoid",
            [Violation("TableNotTotal", f"missing mul {a} {b}") for a, b in missing],
        )
    full = tuple(tuple(row) for row in table)  # type: ignore[arg-type]
    return MonoidEntity(
        name, tuple(elems), unit, full, build_monoid_category(elems, unit, full)
    )


def _parse_category(p: _Parser) -> CategoryEntity:
    name = p.expect_ident("category name").value
    p.expect_punct("{")
    p.expect_ident("objects")
    objs = p.ident_list()
    p.end_stmt()
    obj_idx = {o: i for i, o in enumerate(objs)}
    n = len(objs)
    mors: list[tuple[str, int, int]] = [
        (f"id_{o}", i, i) for i, o in enumerate(objs)
    ]
    mor_idx = {m[0]: i for i, m in enumerate(mors)}
    while p.at_ident("arrows"):
        p.next()
        aname = p.expect_ident("arrow name")
        if aname.value.startswith("id_"):
            raise ValidationFailed(
                "category",
                [Violation("ReservedName", f"arrow name {aname.value!r}")],
            )
        p.expect_punct(":")
        a = p.expect_ident()
        p.expect_punct("->")
        b = p.expect_ident()
        p.end_stmt()
        if aname.value in mor_idx:
            raise ValidationFailed(
                "category", [Violation("DuplicateName", aname.value)]
            )
        mor_idx[aname.value] = len(mors)
        mors.append(
            (
                aname.value,
                _resolve(obj_idx, a.value, a, "object"),
                _resolve(obj_idx, b.value, b, "object"),
            )
        )
    comp: dict[tuple[int, int], int] = {}
    while p.at_ident("compose"):
        p.next()
        g = p.expect_ident()
        f = p.expect_ident()
        p.expect_punct("=")
        h = p.expect_ident()
        p.end_stmt()
        key = (
            _resolve(mor_idx, g.value, g, "arrow"),
            _resolve(mor_idx, f.value, f, "arrow"),
        )
        val = _resolve(mor_idx, h.value, h, "arrow")
        if key in comp and comp[key] != val:
            raise ValidationFailed(
                "category",
                [Violation("IllegalComposite", f"conflicting compose {g.value} {f.value}")],
            )
        comp[key] = val
    p.expect_punct("}")
    # Identity-law completion for pairs involving identities.
    for m, (_, d, c) in enumerate(mors):
        comp.setdefault((c, m), m)  # id after m (identity of cod has ref cod)
        comp.setdefault((m, d), m)
    cat = validate_category(objs, mors, list(range(n)), comp)
    return CategoryEntity(name, cat)


def _parse_functor(p: _Parser, doc: Document) -> FunctorEntity:
    name = p.expect_ident("functor name").value
    p.expect_punct(":")
    src_name = p.expect_ident("source category").value
    p.expect_punct("->")
    tgt_name = p.expect_ident("target category").value
    src = doc.category_of(src_name)
    tgt = doc.category_of(tgt_name)
    p.expect_punct("{")
    s_obj = {o: i for i, o in enumerate(src.object_names)}
    t_obj = {o: i for i, o in enumerate(tgt.object_names)}
    s_mor = {m: i for i, m in enumerate(src.mor_names)}
    t_mor = {m: i for i, m in enumerate(tgt.mor_names)}
    obj_map: dict[int, int] = {}
    while p.at_ident("object"):
        p.next()
        a = p.expect_ident()
        p.expect_punct("=>")
        b = p.expect_ident()
        p.end_stmt()
        obj_map[_resolve(s_obj, a.value, a, "object")] = _resolve(
            t_obj, b.value, b, "object"
        )
    mor_map: dict[int, int] = {}
    while p.at_ident("arrow"):
        p.next()
        a = p.expect_ident()
        p.expect_punct("=>")
        b = p.expect_ident()
        p.end_stmt()
        mor_map[_resolve(s_mor, a.value, a, "arrow")] = _resolve(
            t_mor, b.value, b, "arrow"
        )
    p.expect_punct("}")
    missing = [src.object_names[i] for i in range(src.n_objects) if i not in obj_map]
    if missing:
        raise ValidationFailed(
            "functor", [Violation("ObjectNotMapped", m) for m in missing]
        )
    for m in range(src.n_mors):
        if m in mor_map:
            continue
        if src.is_identity(m):
            mor_map[m] = tgt.identity[obj_map[src.mor_dom[m]]]
        else:
            raise ValidationFailed(
                "functor", [Violation("ArrowNotMapped", src.mor_names[m])]
            )
    functor = validate_functor(
        src,
        tgt,
        [obj_map[i] for i in range(src.n_objects)],
        [mor_map[i] for i in range(src.n_mors)],
    )
    return FunctorEntity(name, src_name, tgt_name, functor)


def _parse_nattrans(p: _Parser, doc: Document) -> NatTransEntity:
    name = p.expect_ident("nattrans name").value
    p.expect_punct(":")
    f_name = p.expect_ident().value
    p.expect_punct("=>")
    g_name = p.expect_ident().value
    fe = doc[f_name]
    ge = doc[g_name]
    if not isinstance(fe, FunctorEntity) or not isinstance(ge, FunctorEntity):
        raise UnresolvedReference(f"{f_name} / {g_name} must be functors")
    f, g = fe.functor, ge.functor
    p.expect_punct("{")
    s_obj = {o: i for i, o in enumerate(f.source.object_names)}
    t_mor = {m: i for i, m in enumerate(f.target.mor_names)}
    comps: dict[int, int] = {}
    while p.at_ident("at"):
        p.next()
        a = p.expect_ident()
        p.expect_punct("=")
        m = p.expect_ident()
        p.end_stmt()
        comps[_resolve(s_obj, a.value, a, "object")] = _resolve(
            t_mor, m.value, m, "arrow"
        )
    p.expect_punct("}")
    missing = [
        f.source.object_names[i]
        for i in range(f.source.n_objects)
        if i not in comps
    ]
    if missing:
        raise ValidationFailed(
            "nat-trans", [Violation("ComponentMissing", m) for m in missing]
        )
    nt = validate_nat_trans(
        [comps[i] for i in range(f.source.n_objects)], f, g
    )
    return NatTransEntity(name, f_name, g_name, nt)


def _parse_copresheaf(p: _Parser, doc: Document) -> CopresheafEntity:
    name = p.expect_ident("copresheaf name").value
    p.expect_ident("on")
    base_name = p.expect_ident().value
    base = doc.category_of(base_name)
    p.expect_punct("{")
    obj_idx = {o: i for i, o in enumerate(base.object_names)}
    mor_idx = {m: i for i, m in enumerate(base.mor_names)}
    fibers: list[list[str]] = [[] for _ in range(base.n_objects)]
    while p.at_ident("at"):
        p.next()
        q = p.expect_ident()
        p.expect_punct("=")
        p.expect_punct("{")
        elems = p.ident_list()
        p.expect_punct("}")
        p.end_stmt()
        fibers[_resolve(obj_idx, q.value, q, "object")] = elems
    acts: dict[int, dict[str, str]] = {}
    while p.at_ident("act"):
        p.next()
        a = p.expect_ident()
        m = _resolve(mor_idx, a.value, a, "arrow")
        p.expect_punct("{")
        mapping: dict[str, str] = {}
        while p.peek().kind == "ident":
            x = p.expect_ident()
            p.expect_punct("=>")
            y = p.expect_ident()
            p.end_stmt()
            mapping[x.value] = y.value
        p.expect_punct("}")
        acts[m] = mapping
    p.expect_punct("}")
    elem_idx = [{e: i for i, e in enumerate(f)} for f in fibers]
    action: list[list[int]] = []
    bad: list[Violation] = []
    for m in range(base.n_mors):
        d, c = base.mor_dom[m], base.mor_cod[m]
        if base.is_identity(m) and m not in acts:
            action.append(list(range(len(fibers[d]))))
            continue
        mapping = acts.get(m, {})
        row = []
        for e in fibers[d]:
            if e not in mapping:
                bad.append(
                    Violation("MissingAction", f"{base.mor_names[m]} on {e}")
                )
                row.append(0)
            else:
                y = mapping[e]
                if y not in elem_idx[c]:
                    raise UnresolvedReference(
                        f"element {y!r} in fiber of {base.object_names[c]}"
                    )
                row.append(elem_idx[c][y])
        action.append(row)
    if bad:
        raise ValidationFailed("copresheaf", bad)
    cop = validate_copresheaf(base, fibers, action)
    return CopresheafEntity(name, base_name, cop)


def _parse_system(p: _Parser, doc: Document) -> SystemEntity:
    name = p.expect_ident("system name").value
    p.expect_ident("in")
    cat_name = p.expect_ident().value
    p.expect_ident("over")
    poset_name = p.expect_ident().value
    cop_name: Optional[str] = None
    if p.take_ident("using"):
        p.expect_ident("copresheaf")
        cop_name = p.expect_ident().value
    ambient = doc.category_of(cat_name)
    pe = doc[poset_name]
    if not isinstance(pe, PosetEntity):
        raise UnresolvedReference(f"{poset_name} must be a poset")
    index = pe.poset
    cop = None
    if cop_name is not None:
        ce = doc[cop_name]
        if not isinstance(ce, CopresheafEntity):
            raise UnresolvedReference(f"{cop_name} must be a copresheaf")
        cop = ce.copresheaf
    p.expect_punct("{")
    idx = {e: i for i, e in enumerate(index.elements)}
    obj_idx = {o: i for i, o in enumerate(ambient.object_names)}
    mor_idx = {m: i for i, m in enumerate(ambient.mor_names)}
    at: dict[int, int] = {}
    while p.at_ident("object"):
        p.next()
        a = p.expect_ident()
        p.expect_punct("=>")
        o = p.expect_ident()
        p.end_stmt()
        at[_resolve(idx, a.value, a, "index")] = _resolve(
            obj_idx, o.value, o, "object"
        )
    bond: dict[tuple[int, int], int] = {}
    while p.at_ident("bond"):
        p.next()
        a = p.expect_ident()
        b = p.expect_ident()
        p.expect_punct("=>")
        m = p.expect_ident()
        p.end_stmt()
        bond[
            (
                _resolve(idx, a.value, a, "index"),
                _resolve(idx, b.value, b, "index"),
            )
        ] = _resolve(mor_idx, m.value, m, "arrow")
    cone_elems: dict[int, str] = {}
    while p.at_ident("cone"):
        p.next()
        a = p.expect_ident()
        p.expect_punct("=>")
        e = p.expect_ident()
        p.end_stmt()
        cone_elems[_resolve(idx, a.value, a, "index")] = e.value
    p.expect_punct("}")
    missing = [index.elements[i] for i in range(index.n) if i not in at]
    if missing:
        raise ValidationFailed(
            "system", [Violation("ObjectNotMapped", m) for m in missing]
        )
    system = validate_system(
        ambient, index, [at[i] for i in range(index.n)], bond
    )
    cone = None
    if cone_elems:
        if cop is None:
            raise ValidationFailed(
                "system",
                [Violation("ConeWithoutCopresheaf", "cone requires `using copresheaf`")],
            )
        elems = []
        for i in range(index.n):
            if i not in cone_elems:
                raise ValidationFailed(
                    "system",
                    [Violation("ConeIncomplete", index.elements[i])],
                )
            fiber = cop.fibers[system.at[i]]
            ename = cone_elems[i]
            if ename not in fiber:
                raise UnresolvedReference(
                    f"cone element {ename!r} at index {index.elements[i]}"
                )
            elems.append(fiber.index(ename))
        cone = make_cone(system, cop, elems)
    return SystemEntity(name, cat_name, poset_name, cop_name, system, cone)


def _parse_coproducts(p: _Parser, doc: Document) -> CoproductsEntity:
    p.expect_ident("on")
    base_name = p.expect_ident().value
    base = doc.category_of(base_name)
    p.expect_punct("{")
    obj_idx = {o: i for i, o in enumerate(base.object_names)}
    mor_idx = {m: i for i, m in enumerate(base.mor_names)}
    table: dict[tuple[int, int], tuple[int, int, int]] = {}
    while p.at_ident("pair"):
        p.next()
        a = p.expect_ident()
        b = p.expect_ident()
        p.expect_punct("=>")
        j = p.expect_ident()
        p.expect_ident("with")
        p.expect_ident("inj1")
        m1 = p.expect_ident()
        p.expect_ident("inj2")
        m2 = p.expect_ident()
        p.end_stmt()
        table[
            (
                _resolve(obj_idx, a.value, a, "object"),
                _resolve(obj_idx, b.value, b, "object"),
            )
        ] = (
            _resolve(obj_idx, j.value, j, "object"),
            _resolve(mor_idx, m1.value, m1, "arrow"),
            _resolve(mor_idx, m2.value, m2, "arrow"),
        )
    p.expect_punct("}")
    designation = validate_designation(base, table)
    return CoproductsEntity(f"coproducts_{base_name}", base_name, designation)


def parse_document(text: str) -> Document:
    """Parse and validate a `.cat` document."""
    p = _Parser(text)
    doc = Document()
    while p.peek().kind != "eof":
        t = p.expect_ident("entity keyword")
        if t.value == "poset":
            doc.add(_parse_poset(p))
        elif t.value == "monoid":
            doc.add(_parse_monoid(p))
        elif t.value == "category":
            doc.add(_parse_category(p))
        elif t.value == "functor":
            doc.add(_parse_functor(p, doc))
        elif t.value == "nattrans":
            doc.add(_parse_nattrans(p, doc))
        elif t.value == "copresheaf":
            doc.add(_parse_copresheaf(p, doc))
        elif t.value == "system":
            doc.add(_parse_system(p, doc))
        elif t.value == "coproducts":
            doc.add(_parse_coproducts(p, doc))
        else:
            raise DslSyntaxError(
                t.line, t.col, "one of " + ", ".join(_KEYWORDS), t.value
            )
    return doc


# ---------------------------------------------------------------------------
# Serializer


def _ser_poset(e: PosetEntity, out: list[str]) -> None:
    out.append(f"poset {e.name} {{")
    out.append("  elements " + " ".join(e.poset.elements) + " ;")
    for i, j in e.poset.strict_pairs():
        out.append(f"  leq {e.poset.elements[i]} {e.poset.elements[j]} ;")
    out.append("}")


def _ser_monoid(e: MonoidEntity, out: list[str]) -> None:
    out.append(f"monoid {e.name} {{")
    out.append("  elements " + " ".join(e.elements) + " ;")
    out.append(f"  unit {e.elements[e.unit]} ;")
    k = len(e.elements)
    for i in range(k):
        for j in range(k):
            out.append(
                f"  mul {e.elements[i]} {e.elements[j]} = "
                f"{e.elements[e.table[i][j]]} ;"
            )
    out.append("}")


def _ser_category(e: CategoryEntity, out: list[str]) -> None:
    c = e.category
    out.append(f"category {e.name} {{")
    out.append("  objects " + " ".join(c.object_names) + " ;")
    for m in range(c.n_mors):
        if c.is_identity(m):
            continue
        out.append(
            f"  arrows {c.mor_names[m]}: {c.object_names[c.mor_dom[m]]} -> "
            f"{c.object_names[c.mor_cod[m]]} ;"
        )
    for (g, f) in sorted(c.comp):
        if c.is_identity(g) or c.is_identity(f):
            continue
        out.append(
            f"  compose {c.mor_names[g]} {c.mor_names[f]} = "
            f"{c.mor_names[c.comp[(g, f)]]} ;"
        )
    out.append("}")


def _ser_functor(e: FunctorEntity, out: list[str]) -> None:
    f = e.functor
    out.append(f"functor {e.name} : {e.source_name} -> {e.target_name} {{")
    for a in range(f.source.n_objects):
        out.append(
            f"  object {f.source.object_names[a]} => "
            f"{f.target.object_names[f.obj_map[a]]} ;"
        )
    for m in range(f.source.n_mors):
        if f.source.is_identity(m):
            continue
        out.append(
            f"  arrow {f.source.mor_names[m]} => "
            f"{f.target.mor_names[f.mor_map[m]]} ;"
        )
    out.append("}")


def _ser_nattrans(e: NatTransEntity, out: list[str]) -> None:
    nt = e.transformation
    src = nt.source.source
    tgt = nt.source.target
    out.append(f"nattrans {e.name} : {e.from_name} => {e.to_name} {{")
    for a in range(src.n_objects):
        out.append(
            f"  at {src.object_names[a]} = {tgt.mor_names[nt.components[a]]} ;"
        )
    out.append("}")


def _ser_copresheaf(e: CopresheafEntity, out: list[str]) -> None:
    h = e.copresheaf
    base = h.base
    out.append(f"copresheaf {e.name} on {e.base_name} {{")
    for q in range(base.n_objects):
        if h.fibers[q]:
            out.append(
                f"  at {base.object_names[q]} = {{ "
                + " ".join(h.fibers[q])
                + " } ;"
            )
    for m in range(base.n_mors):
        if base.is_identity(m):
            continue
        d, c = base.mor_dom[m], base.mor_cod[m]
        if not h.fibers[d]:
            continue
        inner = " ".join(
            f"{h.fibers[d][x]} => {h.fibers[c][h.action[m][x]]} ;"
            for x in range(len(h.fibers[d]))
        )
        out.append(f"  act {base.mor_names[m]} {{ {inner} }}")
    out.append("}")


def _ser_system(e: SystemEntity, out: list[str]) -> None:
    s = e.system
    head = f"system {e.name} in {e.category_name} over {e.poset_name}"
    if e.copresheaf_name is not None:
        head += f" using copresheaf {e.copresheaf_name}"
    out.append(head + " {")
    for a in range(s.index.n):
        out.append(
            f"  object {s.index.elements[a]} => "
            f"{s.ambient.object_names[s.at[a]]} ;"
        )
    for i, j in s.index.strict_pairs():
        out.append(
            f"  bond {s.index.elements[i]} {s.index.elements[j]} => "
            f"{s.ambient.mor_names[s.bond[(i, j)]]} ;"
        )
    if e.cone is not None:
        h = e.cone.copresheaf
        for a in range(s.index.n):
            out.append(
                f"  cone {s.index.elements[a]} => "
                f"{h.fibers[s.at[a]][e.cone.elements[a]]} ;"
            )
    out.append("}")


def _ser_coproducts(e: CoproductsEntity, out: list[str]) -> None:
    d = e.designation
    base = d.base
    out.append(f"coproducts on {e.base_name} {{")
    for (a, b) in sorted(d.table):
        j, i1, i2 = d.table[(a, b)]
        out.append(
            f"  pair {base.object_names[a]} {base.object_names[b]} => "
            f"{base.object_names[j]} with inj1 {base.mor_names[i1]} "
            f"inj2 {base.mor_names[i2]} ;"
        )
    out.append("}")


_SERIALIZERS = {
    PosetEntity: _ser_poset,
    MonoidEntity: _ser_monoid,
    CategoryEntity: _ser_category,
    FunctorEntity: _ser_functor,
    NatTransEntity: _ser_nattrans,
    CopresheafEntity: _ser_copresheaf,
    SystemEntity: _ser_system,
    CoproductsEntity: _ser_coproducts,
}


def serialize_document(doc: Document) -> str:
    """Canonical text form; parse(serialize(doc)) rebuilds identical tables
    for documents in normal form (all parser output is)."""
    out: list[str] = []
    for e in doc.entities:
        _SERIALIZERS[type(e)](e, out)
        out.append("")
    return "\n".join(out)
