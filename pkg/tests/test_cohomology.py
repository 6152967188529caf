import random
from math import gcd

import pytest

from twistlgp.cohomology import (
    Cochain,
    IncompatibleCoefficients,
    TooLarge,
    coboundary,
    cohomology,
    conjugation_on_cohomology,
    inflation,
    is_cocycle,
    restriction,
    sha_finite,
    zero_cochain,
)
from twistlgp.gmodules import (
    all_characters,
    descend_to_quotient,
    mu_module,
    trivial_module,
)
from twistlgp.groups import (
    Subgroup,
    cyclic,
    cyclic_subgroups,
    direct_product,
    quotient,
    subgroup_generated,
    subgroups,
    symmetric,
)


def random_cochain(module, degree, rng):
    count = module.group.order**degree
    values = tuple(
        tuple(rng.randrange(d) for d in module.orders) for _ in range(count)
    )
    return Cochain(module, degree, values)


def full_subgroup(group):
    return Subgroup(group, tuple(group.elements()))


def test_coboundary_formulas():
    rng = random.Random(11)
    s3 = symmetric(3)
    module = mu_module(s3, 9, all_characters(s3, 9)[-1])
    for degree in (0, 1):
        for _ in range(8):
            c = random_cochain(module, degree, rng)
            assert coboundary(coboundary(c)).is_zero  # d d = 0
    # a homomorphism into a trivial-action module is a 1-cocycle
    c6 = cyclic(6)
    m6 = trivial_module(c6, [3])
    hom = Cochain(m6, 1, tuple(((2 * g) % 3,) for g in c6.elements()))
    assert coboundary(hom).is_zero
    # degree-0 coboundary under the trivial action vanishes
    assert coboundary(Cochain(m6, 0, ((2,),))).is_zero


def test_h0_equals_invariants():
    from twistlgp.gmodules import invariants

    cases = [cyclic(1), cyclic(2), cyclic(6), symmetric(3)]
    for group in cases:
        for m in (3, 4, 9):
            for chi in all_characters(group, m):
                module = mu_module(group, m, chi)
                h0 = cohomology(group, module, 0)
                assert h0.invariant_factors == invariants(module).orders


def test_cyclic_closed_forms():
    for n in range(1, 9):
        for m in (3, 5, 7, 9):
            group = cyclic(n)
            module = trivial_module(group, [m])
            expected = () if gcd(n, m) == 1 else (gcd(n, m),)
            assert cohomology(group, module, 1).invariant_factors == expected
            assert cohomology(group, module, 2).invariant_factors == expected


def test_coprime_order_vanishing():
    groups = [cyclic(2), cyclic(4), direct_product(cyclic(2), cyclic(2)), cyclic(8)]
    for group in groups:
        for m in (3, 5, 9):
            for chi in all_characters(group, m):
                module = mu_module(group, m, chi)
                assert cohomology(group, module, 1).is_trivial
                assert cohomology(group, module, 2).is_trivial


def test_exponent_annihilates_cohomology():
    cases = [(cyclic(4), 8), (symmetric(3), 9), (cyclic(6), 9), (cyclic(6), 12)]
    for group, m in cases:
        for chi in all_characters(group, m)[:2]:
            module = mu_module(group, m, chi)
            for degree in (1, 2):
                h = cohomology(group, module, degree)
                assert module.size ** (group.order**degree) % h.order == 0
                for factor in h.invariant_factors:
                    assert group.order % factor == 0  # annihilated by |G|


def test_class_of_and_membership():
    group = cyclic(3)
    module = trivial_module(group, [3])
    h1 = cohomology(group, module, 1)
    assert h1.invariant_factors == (3,)
    rep = h1.representatives[0]
    assert is_cocycle(rep)
    assert h1.class_of(rep).coordinates == (1,)
    assert h1.class_of(rep.add(rep)).coordinates == (2,)
    assert h1.is_coboundary(rep.scale(3))
    assert h1.is_coboundary(zero_cochain(module, 1))
    with pytest.raises(ValueError):
        h1.class_of(Cochain(module, 1, ((0,), (1,), (0,))))  # not a cocycle


def test_representatives_are_independent_cocycles():
    cases = [
        (direct_product(cyclic(2), cyclic(2)), 2),
        (cyclic(6), 3),
        (symmetric(3), 6),
    ]
    for group, m in cases:
        module = trivial_module(group, [m])
        for degree in (1, 2):
            h = cohomology(group, module, degree)
            for i, rep in enumerate(h.representatives):
                assert is_cocycle(rep)
                expected = tuple(
                    1 if j == i else 0 for j in range(len(h.invariant_factors))
                )
                assert h.class_of(rep).coordinates == expected
                assert not h.is_coboundary(rep)


def test_too_large():
    group = cyclic(8)
    module = trivial_module(group, [3])
    with pytest.raises(TooLarge):
        cohomology(group, module, 2, size_bound=10)


def test_restriction_to_self_is_identity():
    s3 = symmetric(3)
    module = trivial_module(s3, [6])
    h1 = cohomology(s3, module, 1)
    res = restriction(h1, full_subgroup(s3))
    size = len(h1.invariant_factors)
    assert res.matrix == tuple(
        tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
    )
    assert res.is_isomorphism


def test_restriction_h1_s3_mod3():
    # Hom(S3, Z/3) = 0, so restriction to C3 is trivially injective
    s3 = symmetric(3)
    module = trivial_module(s3, [3])
    h1 = cohomology(s3, module, 1)
    assert h1.is_trivial
    c3 = next(s for s in subgroups(s3) if s.order == 3)
    res = restriction(h1, c3)
    assert res.is_injective


def test_restriction_h2_c6_to_c3_isomorphism():
    c6 = cyclic(6)
    module = trivial_module(c6, [3])
    h2 = cohomology(c6, module, 2)
    assert h2.invariant_factors == (3,)
    c3 = subgroup_generated(c6, [2])
    res = restriction(h2, c3)
    assert res.target.invariant_factors == (3,)
    assert res.is_isomorphism


def test_restriction_functoriality():
    # restricting D4 -> C4 (rotations) -> C2 equals restricting straight to C2
    from twistlgp.groups import dihedral

    d4 = dihedral(4)
    module = trivial_module(d4, [4])
    rotations = subgroup_generated(d4, [1])
    half_turn = subgroup_generated(d4, [2])
    assert half_turn.elements == (0, 2)
    for degree in (1, 2):
        h = cohomology(d4, module, degree)
        via_rotations = restriction(h, rotations)
        rot_group, embed = rotations.as_group
        positions = {g: i for i, g in enumerate(embed)}
        inner = Subgroup(rot_group, tuple(positions[g] for g in half_turn.elements))
        composed = restriction(via_rotations.target, inner).compose(via_rotations)
        direct = restriction(h, half_turn)
        assert composed.target is direct.target
        b = direct.target.invariant_factors
        for i in range(len(b)):
            for row_c, row_d in ((composed.matrix[i], direct.matrix[i]),):
                assert all((x - y) % b[i] == 0 for x, y in zip(row_c, row_d))


def test_inflation_identity_for_trivial_kernel():
    c6 = cyclic(6)
    module = trivial_module(c6, [3])
    trivial_sub = Subgroup(c6, (0,))
    q, proj = quotient(c6, trivial_sub)
    sub, embed = descend_to_quotient(module, proj)
    x = cohomology(q, sub, 2)
    inf = inflation(x, proj, module, embed)
    assert inf.is_isomorphism


def test_inflation_c6_collapse():
    # G = C6, N = C2, m = 3: inflation H^2(C3, Z/3) -> H^2(C6, Z/3) is an iso
    c6 = cyclic(6)
    module = trivial_module(c6, [3])
    n = subgroup_generated(c6, [3])
    q, proj = quotient(c6, n)
    sub, embed = descend_to_quotient(module, proj)
    assert sub.orders == (3,)
    x = cohomology(q, sub, 2)
    assert x.invariant_factors == (3,)
    inf = inflation(x, proj, module, embed)
    assert inf.target.invariant_factors == (3,)
    assert inf.is_isomorphism


def test_inflation_s3_zero_map_between_trivial_groups():
    s3 = symmetric(3)
    module = trivial_module(s3, [3])
    c3 = next(s for s in subgroups(s3) if s.order == 3)
    q, proj = quotient(s3, c3)
    sub, embed = descend_to_quotient(module, proj)
    assert sub.orders == (3,)  # mu_3 fixed by C3
    x = cohomology(q, sub, 2)
    assert x.is_trivial  # H^2(C2, Z/3) = 1
    inf = inflation(x, proj, module, embed)
    assert inf.target.is_trivial
    assert inf.is_zero


def test_inflation_rejects_bad_coefficients():
    c6 = cyclic(6)
    module = trivial_module(c6, [3])
    n = subgroup_generated(c6, [3])
    q, proj = quotient(c6, n)
    bad = trivial_module(q, [9])
    x = cohomology(q, bad, 2)
    with pytest.raises(IncompatibleCoefficients):
        inflation(x, proj, module, [[1]])


def test_inflation_restriction_exactness_h1():
    cases = [
        (cyclic(6), subgroup_generated(cyclic(6), [2]), 6),
        (symmetric(3), None, 6),
        (direct_product(cyclic(2), cyclic(2)), None, 2),
    ]
    for group, normal, m in cases:
        if normal is None:
            normal = next(
                s for s in subgroups(group) if s.is_normal() and 1 < s.order < group.order
            )
        module = trivial_module(group, [m])
        q, proj = quotient(group, normal)
        sub, embed = descend_to_quotient(module, proj)
        x = cohomology(q, sub, 1)
        inf = inflation(x, proj, module, embed)
        res = restriction(inf.target, normal)
        # res o inf = 0 and ker(res) = im(inf), with inf injective
        assert res.compose(inf).is_zero
        assert inf.is_injective
        kernel_factors, _ = res.kernel()
        assert kernel_factors == inf.image_invariants()


def test_conjugation_action_s3_on_c3():
    s3 = symmetric(3)
    module = trivial_module(s3, [3])
    c3 = next(s for s in subgroups(s3) if s.order == 3)
    action = conjugation_on_cohomology(s3, c3, module, 2)
    assert action.cohomology.invariant_factors == (3,)
    assert action.quotient_group.order == 2
    mats = action.matrices
    assert mats[0] == ((1,),)
    assert mats[1] == ((2,),)  # the nontrivial coset acts by -1 on Z/3
    assert action.invariant_factors_of_fixed_subgroup() == ()


def test_conjugation_trivial_cases():
    # G = N: inner automorphisms act trivially
    s3 = symmetric(3)
    module = trivial_module(s3, [6])
    action = conjugation_on_cohomology(s3, full_subgroup(s3), module, 1)
    assert action.quotient_group.order == 1
    assert action.is_trivial_action()
    # abelian G with trivial action on M: trivial in all degrees
    for degree in (0, 1, 2):
        c6 = cyclic(6)
        mod = trivial_module(c6, [3])
        sub = subgroup_generated(c6, [2])
        act = conjugation_on_cohomology(c6, sub, mod, degree)
        assert act.is_trivial_action()


def test_restriction_onto_conjugation_invariants_s3():
    # res: H^2(S3, mu_3) -> H^2(C3, mu_3)^{S3/C3} is an isomorphism
    s3 = symmetric(3)
    module = trivial_module(s3, [3])
    c3 = next(s for s in subgroups(s3) if s.order == 3)
    h2 = cohomology(s3, module, 2)
    res = restriction(h2, c3)
    action = conjugation_on_cohomology(s3, c3, module, 2)
    fixed_factors, fixed_gens = action.fixed_subgroup()
    assert res.is_injective
    assert res.image_invariants() == fixed_factors == ()
    assert h2.order == 1


def test_sha_finite_properties():
    cases = [
        (symmetric(3), 6),
        (cyclic(6), 3),
        (direct_product(cyclic(2), cyclic(2)), 2),
        (direct_product(cyclic(3), cyclic(3)), 3),
    ]
    for group, m in cases:
        module = trivial_module(group, [m])
        h1 = cohomology(group, module, 1)
        # family containing G itself: trivial kernel
        sha = sha_finite(group, module, [full_subgroup(group)])
        assert sha.invariant_factors == ()
        # trivial action, all cyclic subgroups: a homomorphism vanishing on
        # every cyclic subgroup vanishes
        sha = sha_finite(group, module, cyclic_subgroups(group))
        assert sha.invariant_factors == ()
        # family = {trivial subgroup}: everything is locally trivial
        sha = sha_finite(group, module, [Subgroup(group, (0,))])
        assert sha.invariant_factors == h1.invariant_factors
    with pytest.raises(ValueError):
        sha_finite(symmetric(3), trivial_module(symmetric(3), [3]), [])


def test_sha_representatives_restrict_trivially():
    # a case with nontrivial H^1 where the kernel is proper
    group = direct_product(cyclic(2), cyclic(2))
    module = trivial_module(group, [2])
    family = [subgroup_generated(group, [1])]
    sha = sha_finite(group, module, family)
    h1 = cohomology(group, module, 1)
    assert sha.order < h1.order
    for rep in sha.representatives:
        assert is_cocycle(rep)
        res = restriction(h1, family[0])
        assert res.apply(h1.class_of(rep)).is_zero


def test_determinism():
    group = symmetric(3)
    module = trivial_module(group, [6])
    a = cohomology(group, module, 2)
    b = cohomology(group, module, 2)
    assert a is b  # cached
    # a fresh equal module gives identical structure and representatives
    module2 = trivial_module(symmetric(3), [6])
    c = cohomology(symmetric(3), module2, 2)
    assert c is a
    assert [rep.values for rep in c.representatives] == [
        rep.values for rep in a.representatives
    ]
