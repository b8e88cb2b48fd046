"""Inverse systems over finite posets inside an ambient finite category,
cones valued in a copresheaf, and the checkers for the two strong-movability
conditions on systems, the associated-system conditions, and the direct
object-by-object condition on copresheaves.

The index poset is not required to be directed: over a finite directed
poset both system conditions hold trivially (there is a maximum element and
the bonds themselves are witnesses), so non-directed indices are what make
the checkers interesting.  Directedness is reported on validation because
the classical definitions presuppose it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .core import Copresheaf, FiniteCategory, FinitePoset
from .errors import ConeIncompatible, ValidationFailed, Violation


@dataclass(frozen=True)
class InverseSystem:
    """Indexed objects with bonding morphisms bond[(a, a')] : X_a' -> X_a
    for a <= a', functorial under composition."""

    ambient: FiniteCategory
    index: FinitePoset
    at: tuple[int, ...]
    bond: dict

    @property
    def directed(self) -> bool:
        return self.index.directed

    def bond_of(self, a: int, a2: int) -> int:
        return self.bond[(a, a2)]


def validate_system(
    ambient: FiniteCategory,
    index: FinitePoset,
    at: Sequence[int],
    bond: Mapping[tuple[int, int], int],
) -> InverseSystem:
    """Validate typing and bond functoriality.

    Reflexive bonds may be omitted (they are filled with identities).
    Violation codes: BondTypeError, BondMissing, BondFunctorialityBroken.
    """
    bad: list[Violation] = []
    if len(at) != index.n:
        raise ValidationFailed("system", [Violation("BadRef", "object map size")])
    for a, x in enumerate(at):
        if not 0 <= x < ambient.n_objects:
            bad.append(Violation("BadRef", f"object at index {index.elements[a]}"))
    if bad:
        raise ValidationFailed("system", bad)
    full = dict(bond)
    for a in range(index.n):
        ident = ambient.identity[at[a]]
        if (a, a) in full:
            if full[(a, a)] != ident:
                bad.append(
                    Violation("BondTypeError", f"reflexive bond at {index.elements[a]}")
                )
        else:
            full[(a, a)] = ident
    for (a, a2), m in full.items():
        if not index.leq(a, a2):
            bad.append(
                Violation(
                    "BondTypeError",
                    f"bond ({index.elements[a]}, {index.elements[a2]}) not a <= pair",
                )
            )
        elif m not in ambient.hom(at[a2], at[a]):
            bad.append(
                Violation(
                    "BondTypeError",
                    f"bond ({index.elements[a]}, {index.elements[a2]}) mistyped",
                )
            )
    for i, j in index.relation:
        if (i, j) not in full:
            bad.append(
                Violation(
                    "BondMissing", f"({index.elements[i]}, {index.elements[j]})"
                )
            )
    if bad:
        raise ValidationFailed("system", bad)
    for a in range(index.n):
        for a2 in index.up_set(a):
            for a3 in index.up_set(a2):
                lhs = ambient.comp[(full[(a, a2)], full[(a2, a3)])]
                if lhs != full[(a, a3)]:
                    bad.append(
                        Violation(
                            "BondFunctorialityBroken",
                            f"({index.elements[a]}, {index.elements[a2]}, "
                            f"{index.elements[a3]})",
                        )
                    )
    if bad:
        raise ValidationFailed("system", bad)
    return InverseSystem(ambient, index, tuple(at), full)


@dataclass(frozen=True)
class SystemCone:
    """Compatible family of copresheaf elements standing in for the
    projections from the apex: element[a] lives in H(X_a)."""

    copresheaf: Copresheaf
    elements: tuple[int, ...]


def make_cone(
    system: InverseSystem, h: Copresheaf, elements: Sequence[int]
) -> SystemCone:
    """Type-check a cone (compatibility itself is checked by the checkers,
    so that condition-1 failures stay observable)."""
    bad: list[Violation] = []
    if h.base != system.ambient:
        raise ValidationFailed(
            "cone", [Violation("BadRef", "copresheaf base is not the ambient")]
        )
    if len(elements) != system.index.n:
        raise ValidationFailed("cone", [Violation("BadRef", "element count")])
    for a, x in enumerate(elements):
        if not 0 <= x < h.fiber_size(system.at[a]):
            bad.append(
                Violation("BadRef", f"element at {system.index.elements[a]}")
            )
    if bad:
        raise ValidationFailed("cone", bad)
    return SystemCone(h, tuple(elements))


def cone_compatible(system: InverseSystem, cone: SystemCone) -> list[tuple[int, int]]:
    """Pairs (a, a') violating action(bond(a, a'))(element(a')) = element(a)."""
    out = []
    for a in range(system.index.n):
        for a2 in system.index.up_set(a):
            if (
                cone.copresheaf.apply(system.bond[(a, a2)], cone.elements[a2])
                != cone.elements[a]
            ):
                out.append((a, a2))
    return out


@dataclass(frozen=True)
class SM1Witness:
    """For each a: the chosen a'; for each (a, a''): the chosen (a*, r)."""

    alpha_prime: tuple[int, ...]
    choices: dict  # (a, a'') -> (a_star, r)


@dataclass(frozen=True)
class SM2Witness:
    alpha_prime: tuple[int, ...]
    choices: dict  # (a, a'') -> r


@dataclass(frozen=True)
class SMCounterexample:
    """Index a defeating every candidate a'; defeats[a'] is the first a''
    for which no witness exists."""

    alpha: int
    defeats: dict


SM1Result = Union[SM1Witness, SMCounterexample]
SM2Result = Union[SM2Witness, SMCounterexample]


def check_sm1(system: InverseSystem, *, independent_astar: bool = False) -> SM1Result:
    """Evaluate the inverse-system strong-movability condition:

    for all a, exists a' >= a, for all a'' >= a, exist a* >= a', a'' and
    r: X_a' -> X_a'' with bond(a, a') = bond(a, a'') . r and
    r . bond(a', a*) = bond(a'', a*).

    With independent_astar the first equality is checked on its own and a*
    only has to serve the second (the verdict coincides, since the first
    equality does not mention a*); the flag exists for exploration.
    """
    amb = system.ambient
    idx = system.index
    alpha_prime = [0] * idx.n
    choices: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(idx.n):
        ups = idx.up_set(a)
        winner = None
        defeats: dict[int, int] = {}
        for a1 in ups:
            local: dict[tuple[int, int], tuple[int, int]] = {}
            defeat = None
            for a2 in ups:
                ubs = sorted(set(idx.up_set(a1)) & set(idx.up_set(a2)))
                rs = amb.hom(system.at[a1], system.at[a2])

                def eq1(r: int) -> bool:
                    return (
                        amb.comp[(system.bond[(a, a2)], r)] == system.bond[(a, a1)]
                    )

                def eq2(r: int, astar: int) -> bool:
                    return (
                        amb.comp[(r, system.bond[(a1, astar)])]
                        == system.bond[(a2, astar)]
                    )

                pick = None
                if independent_astar:
                    # First equality checked on its own; a* only serves the
                    # second.  Smallest r, then smallest a*.
                    for r in rs:
                        if not eq1(r):
                            continue
                        astar = next((s for s in ubs if eq2(r, s)), None)
                        if astar is not None:
                            pick = (astar, r)
                            break
                else:
                    # Single a* serving both equalities; smallest (a*, r).
                    for astar in ubs:
                        for r in rs:
                            if eq1(r) and eq2(r, astar):
                                pick = (astar, r)
                                break
                        if pick:
                            break
                if pick is None:
                    defeat = a2
                    break
                local[(a, a2)] = pick
            if defeat is None:
                winner = (a1, local)
                break
            defeats[a1] = defeat
        if winner is None:
            return SMCounterexample(a, defeats)
        alpha_prime[a] = winner[0]
        choices.update(winner[1])
    return SM1Witness(tuple(alpha_prime), choices)


def check_sm2(system: InverseSystem, cone: SystemCone) -> SM2Result:
    """Evaluate the cone-level reformulation:

    for all a, exists a' >= a, for all a'' >= a, exists r: X_a' -> X_a''
    with bond(a, a'') . r = bond(a, a') and action(r)(element(a')) =
    element(a'').

    Raises ConeIncompatible when the cone violates compatibility.
    """
    bad = cone_compatible(system, cone)
    if bad:
        raise ConeIncompatible(f"cone incompatible at pairs {bad}")
    amb = system.ambient
    idx = system.index
    h = cone.copresheaf
    alpha_prime = [0] * idx.n
    choices: dict[tuple[int, int], int] = {}
    for a in range(idx.n):
        ups = idx.up_set(a)
        winner = None
        defeats: dict[int, int] = {}
        for a1 in ups:
            local: dict[tuple[int, int], int] = {}
            defeat = None
            for a2 in ups:
                pick = next(
                    (
                        r
                        for r in amb.hom(system.at[a1], system.at[a2])
                        if amb.comp[(system.bond[(a, a2)], r)]
                        == system.bond[(a, a1)]
                        and h.apply(r, cone.elements[a1]) == cone.elements[a2]
                    ),
                    None,
                )
                if pick is None:
                    defeat = a2
                    break
                local[(a, a2)] = pick
            if defeat is None:
                winner = (a1, local)
                break
            defeats[a1] = defeat
        if winner is None:
            return SMCounterexample(a, defeats)
        alpha_prime[a] = winner[0]
        choices.update(winner[1])
    return SM2Witness(tuple(alpha_prime), choices)


@dataclass(frozen=True)
class AssociatedReport:
    """Verdicts for the three associated-system conditions.

    cond1: cone compatibility; cond2: every copresheaf element factors
    through the cone; cond3: parallel morphisms equalized on the cone are
    equalized by some bond.
    """

    cond1: bool
    cond1_failures: tuple
    cond2: bool
    cond2_failures: tuple  # (Q, x) with no factorization
    cond3: bool
    cond3_failures: tuple  # (a, Q, f, g) with no equalizing index

    @property
    def associated(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3


def check_associated(system: InverseSystem, cone: SystemCone) -> AssociatedReport:
    """Evaluate the three associated-system conditions exhaustively."""
    amb = system.ambient
    idx = system.index
    h = cone.copresheaf
    c1 = cone_compatible(system, cone)

    c2: list[tuple[int, int]] = []
    for q in range(amb.n_objects):
        for x in range(h.fiber_size(q)):
            hit = any(
                h.apply(f, cone.elements[a]) == x
                for a in range(idx.n)
                for f in amb.hom(system.at[a], q)
            )
            if not hit:
                c2.append((q, x))

    c3: list[tuple[int, int, int, int]] = []
    for a in range(idx.n):
        xa = system.at[a]
        for q in range(amb.n_objects):
            for f in amb.hom(xa, q):
                for g in amb.hom(xa, q):
                    if f >= g:
                        continue
                    if h.apply(f, cone.elements[a]) != h.apply(g, cone.elements[a]):
                        continue
                    equalized = any(
                        amb.comp[(f, system.bond[(a, a1)])]
                        == amb.comp[(g, system.bond[(a, a1)])]
                        for a1 in idx.up_set(a)
                    )
                    if not equalized:
                        c3.append((a, q, f, g))

    return AssociatedReport(
        not c1, tuple(c1), not c2, tuple(c2), not c3, tuple(c3)
    )


@dataclass(frozen=True)
class StarWitness:
    """For each (Q, x): the chosen (Q', x', eta) and, per challenge
    (Q'', x'', eta'), the connecting eta''."""

    choice: dict  # (q, x) -> (q1, x1, eta)
    connectors: dict  # (q, x, q2, x2, eta2) -> eta''


@dataclass(frozen=True)
class StarCounterexample:
    at: tuple[int, int]  # (Q, x) defeating every candidate
    defeats: dict  # (q1, x1, eta) -> first defeating (q2, x2, eta2)


StarResult = Union[StarWitness, StarCounterexample]


def check_star(h: Copresheaf) -> StarResult:
    """Directly evaluate the object-by-object condition on a copresheaf:

    for every (Q, x) there is (Q', x', eta: Q' -> Q) with
    action(eta)(x') = x such that every (Q'', x'', eta': Q'' -> Q) with
    action(eta')(x'') = x admits eta'': Q' -> Q'' with eta' . eta'' = eta
    and action(eta'')(x') = x''.

    This is strong movability of the category of elements, computed without
    building it.
    """
    base = h.base
    choice: dict[tuple[int, int], tuple[int, int, int]] = {}
    connectors: dict[tuple[int, int, int, int, int], int] = {}
    for q in range(base.n_objects):
        for x in range(h.fiber_size(q)):
            challenges = [
                (q2, x2, eta2)
                for q2 in range(base.n_objects)
                for x2 in range(h.fiber_size(q2))
                for eta2 in base.hom(q2, q)
                if h.apply(eta2, x2) == x
            ]
            winner = None
            defeats: dict[tuple[int, int, int], tuple[int, int, int]] = {}
            for q1 in range(base.n_objects):
                for x1 in range(h.fiber_size(q1)):
                    for eta in base.hom(q1, q):
                        if h.apply(eta, x1) != x:
                            continue
                        local: dict[tuple[int, int, int, int, int], int] = {}
                        defeat = None
                        for (q2, x2, eta2) in challenges:
                            conn = next(
                                (
                                    e
                                    for e in base.hom(q1, q2)
                                    if base.comp[(eta2, e)] == eta
                                    and h.apply(e, x1) == x2
                                ),
                                None,
                            )
                            if conn is None:
                                defeat = (q2, x2, eta2)
                                break
                            local[(q, x, q2, x2, eta2)] = conn
                        if defeat is None:
                            winner = (q1, x1, eta, local)
                            break
                        defeats[(q1, x1, eta)] = defeat
                    if winner:
                        break
                if winner:
                    break
            if winner is None:
                return StarCounterexample((q, x), defeats)
            q1, x1, eta, local = winner
            choice[(q, x)] = (q1, x1, eta)
            connectors.update(local)
    return StarWitness(choice, connectors)
