import pytest

from movcat.builders import (
    add_initial_object,
    build_monoid_category,
    canonical_category,
    coslice_category,
    elements_category,
    product_category,
    representable_copresheaf,
)
from movcat.core import validate_category, validate_copresheaf, validate_functor
from movcat.errors import NotAMonoid, SizeBoundExceeded
from util import antichain, chain, find_isomorphism, v_poset_category


def _revalidate(cat):
    validate_category(
        cat.object_names,
        list(zip(cat.mor_names, cat.mor_dom, cat.mor_cod)),
        cat.identity,
        cat.comp,
    )


def test_poset_category_counts():
    assert chain(3).n_mors == 6  # 3 ids + 3 comparisons
    assert antichain(4).n_mors == 4  # identities only
    assert v_poset_category().n_mors == 5


def test_monoid_category():
    triv = build_monoid_category(["e"], 0, [[0]])
    assert (triv.n_objects, triv.n_mors) == (1, 1)
    z2 = build_monoid_category(["e", "a"], 0, [[0, 1], [1, 0]])
    assert (z2.n_objects, z2.n_mors) == (1, 2)
    with pytest.raises(NotAMonoid):
        build_monoid_category(["e", "a"], 0, [[0, 1], [1, 1]][::-1])


def test_monoid_non_associative():
    # x*y = y except a*a = e: (a*a)*b = e*b = b, a*(a*b) = a*b = b fine;
    # use a table that is genuinely non-associative instead.
    with pytest.raises(NotAMonoid):
        build_monoid_category(
            ["e", "a", "b"], 0,
            [[0, 1, 2], [1, 2, 2], [2, 2, 1]],
        )


def test_product_counts_and_projections():
    c2 = chain(2)
    prod = product_category([c2, c2])
    assert prod.category.n_objects == 4
    assert prod.category.n_mors == 9
    _revalidate(prod.category)
    for i, proj in enumerate(prod.projections):
        validate_functor(prod.category, c2, proj.obj_map, proj.mor_map)
    # hom sizes multiply
    for a in range(4):
        for b in range(4):
            ac, bc = prod.object_components(a), prod.object_components(b)
            expected = len(c2.hom(ac[0], bc[0])) * len(c2.hom(ac[1], bc[1]))
            assert len(prod.category.hom(a, b)) == expected


def test_product_with_terminal_preserves_counts():
    k = v_poset_category()
    term = chain(1)
    prod = product_category([k, term]).category
    assert (prod.n_objects, prod.n_mors) == (k.n_objects, k.n_mors)
    assert find_isomorphism(k, prod) is not None


def test_product_size_bound():
    with pytest.raises(SizeBoundExceeded):
        product_category([chain(3), chain(3)], max_objects=4)


def test_product_codecs_roundtrip():
    prod = product_category([chain(2), chain(3)])
    for m in range(prod.category.n_mors):
        assert prod.morphism_index(prod.morphism_components(m)) == m
    for o in range(prod.category.n_objects):
        assert prod.object_index(prod.object_components(o)) == o


def test_coslice_chain2_under_bottom():
    c2 = chain(2)
    res = coslice_category(c2, 0)
    cat = res.category
    assert cat.n_objects == 2  # id_a0 and the comparison a0 <= a1
    assert cat.n_mors == 3
    _revalidate(cat)
    # object id_X (ref of id_a0 is the least) is initial: exactly one
    # morphism to each object.
    initial = res.object_index(c2.identity[0])
    for other in range(cat.n_objects):
        assert len(cat.hom(initial, other)) == 1
    validate_functor(cat, c2, res.forgetful.obj_map, res.forgetful.mor_map)


def test_coslice_of_terminal_is_terminal():
    term = chain(1)
    cat = coslice_category(term, 0).category
    assert (cat.n_objects, cat.n_mors) == (1, 1)


def test_coslice_has_initial_object_everywhere():
    for c in (chain(3), v_poset_category()):
        for x in range(c.n_objects):
            res = coslice_category(c, x)
            initial = res.object_index(c.identity[x])
            for other in range(res.category.n_objects):
                assert len(res.category.hom(initial, other)) == 1


def test_elements_of_representable_iso_to_coslice():
    for c in (chain(3), v_poset_category()):
        for p in range(c.n_objects):
            el = elements_category(representable_copresheaf(c, p)).category
            cos = coslice_category(c, p).category
            assert find_isomorphism(el, cos) is not None


def test_elements_discrete_on_singleton_fibers_over_antichain():
    c = antichain(3)
    h = validate_copresheaf(c, [["x"], ["y"], ["z"]], [[0], [0], [0]])
    cat = elements_category(h).category
    assert (cat.n_objects, cat.n_mors) == (3, 3)


def test_elements_of_lambda_copresheaf():
    # V-poset base, singleton fibers, both actions land in the top fiber:
    # two non-identity arrows into one object.
    c = v_poset_category()
    h = validate_copresheaf(
        c, [["x"], ["y"], ["z"]], [[0], [0], [0], [0], [0]]
    )
    cat = elements_category(h).category
    non_id = [m for m in range(cat.n_mors) if not cat.is_identity(m)]
    assert len(non_id) == 2
    assert len({cat.mor_cod[m] for m in non_id}) == 1


def test_add_initial_object():
    for c in (chain(2), v_poset_category()):
        out = add_initial_object(c)
        _revalidate(out)
        bot = out.n_objects - 1
        for other in range(out.n_objects):
            assert len(out.hom(bot, other)) == 1


def test_canonical_category_idempotent_and_normal():
    cat = add_initial_object(v_poset_category())
    canon, perm = canonical_category(cat)
    _revalidate(canon)
    assert canon.identity == tuple(range(canon.n_objects))
    assert all(
        canon.mor_names[i] == f"id_{canon.object_names[i]}"
        for i in range(canon.n_objects)
    )
    again, perm2 = canonical_category(canon)
    assert again == canon
    assert perm2 == tuple(range(canon.n_mors))


def test_representable_copresheaf_valid():
    c = v_poset_category()
    h = representable_copresheaf(c, 0)
    validate_copresheaf(c, h.fibers, h.action)
    assert h.fiber_size(2) == 1 and h.fiber_size(1) == 0
