import pytest
from conftest import cusp, make_sequence, node

from satnorm import (
    AlgebraMorphism,
    DiagramSquare,
    Ideal,
    Mode,
    PresentedAlgebra,
    classify,
    contraction_check,
    has_retraction,
    identity,
    idempotency_check,
    is_idempotent,
    is_integral,
    is_radicial,
    is_surjective,
    is_unramified,
    quotient_check,
    unramified_witness,
)
from satnorm.diagram import LIP_THEOREMS, WN_THEOREMS, morphism_flags
from satnorm.errors import CompositionMismatch, InvalidWitness, NonCommuting

K = PresentedAlgebra.base_field()


def alg(name, vars, rels=()):
    return PresentedAlgebra.from_strings(name, vars, rels)


def from_field(T):
    return AlgebraMorphism.from_strings(K, T, {})


def elems(alg_, *texts):
    return [alg_(s) for s in texts]


# -- predicates --------------------------------------------------------------------


def test_surjectivity(docs):
    w = docs["witnesses"].morphisms
    quotient = docs["quotient"].morphisms["pibar_a"]
    assert is_surjective(quotient)
    assert not is_surjective(w["cusp_inclusion"])
    assert is_surjective(w["id_B"])


def test_integrality(docs):
    w = docs["witnesses"].morphisms
    v = is_integral(docs["quotient"].morphisms["pibar_a"])
    assert v.is_yes
    v = is_integral(w["cusp_inclusion"])
    assert v.is_yes
    assert v.certificate["equations"]["t"]["equation"] == "X^2 - a"
    v = is_integral(w["polynomial"])
    assert v.is_no and v.certificate["kind"] == "transcendental"


def test_localization_is_not_integral(docs):
    v = is_integral(docs["witnesses"].morphisms["localization"])
    assert v.is_no


def test_radicial_and_unramified_pair(docs):
    w = docs["witnesses"].morphisms
    assert is_radicial(w["localization"])
    assert is_radicial(w["dual_numbers"])
    assert not is_unramified(w["dual_numbers"])
    assert not is_radicial(w["split_points"])
    res = unramified_witness(w["split_points"])
    assert res.unramified and res.verified
    assert str(res.idempotent) == "-1/2*s*s_r + 1/2"


def test_split_idempotent_acts_as_identity_on_the_diagonal(docs):
    psi = docs["witnesses"].morphisms["split_points"]
    res = unramified_witness(psi)
    T = res.idempotent.ring
    rels = [T(r) for r in ("s^2 - 1", "s_r^2 - 1")]
    assert is_idempotent(res.idempotent, rels)
    delta = T("s - s_r")
    assert Ideal(T, [], rels).contains(res.idempotent * delta - delta)


def test_identity_is_everything(docs):
    psi = docs["witnesses"].morphisms["id_B"]
    flags = morphism_flags(psi, retraction=psi)
    assert flags.surjective and flags.integral.is_yes and flags.radicial
    assert flags.unramified and flags.kernel_nil and flags.retraction


def test_retractions(docs):
    q = docs["quotient"]
    assert has_retraction(q.morphisms["id_B"], q.morphisms["id_B"])
    assert has_retraction(q.morphisms["split"], q.morphisms["unsplit"])
    with pytest.raises(CompositionMismatch):
        has_retraction(q.morphisms["split"], q.morphisms["split"])


def test_cusp_inclusion_has_no_retraction_onto_parameter(docs):
    psi = docs["witnesses"].morphisms["cusp_inclusion"]
    B, A = psi.target, psi.source
    # t -> a is a ring map B -> A, but it does not undo the inclusion
    h = AlgebraMorphism.from_strings(B, A, {"t": "a"})
    assert not has_retraction(psi, h)


def test_zero_ring_is_degenerate_not_an_error():
    Z = alg("Z", ["x"], ["1"])
    psi = from_field(Z)
    assert is_surjective(psi) and is_integral(psi).is_yes
    assert is_radicial(psi) and is_unramified(psi)


# -- squares and classification -------------------------------------------------


def test_non_commuting_square_rejected():
    seq = cusp()
    bad = AlgebraMorphism.from_strings(seq.top, seq.top, {"t": "-t + 1"})
    with pytest.raises(NonCommuting):
        DiagramSquare(seq, seq, identity(seq.base), identity(seq.mid), bad)


def test_identity_square_classification():
    c = classify(DiagramSquare.identity_square(cusp()))
    assert c.maranesi and c.strong_lipman and c.lipman.is_yes and c.ker_p_nil
    for flags in (c.f_R, c.f_A, c.f):
        assert flags.surjective and flags.radicial and flags.unramified


@pytest.mark.parametrize("name", ["q1", "q2", "q3", "q4"])
def test_quotient_squares_are_strong_lipman(docs, name):
    square = docs["quotient"].diagrams[name]
    c = classify(square)
    if c.f_A.surjective:
        assert c.strong_lipman


def test_lipman_sequence_square(docs):
    # same R and A on both rows, f arbitrary
    square = docs["integral"].diagrams["adjoin_root"]
    assert square.f_R.source == square.f_R.target
    c = classify(square)
    assert c.strong_lipman and c.maranesi


def test_classification_hierarchy_on_corpus(docs):
    for doc in docs.values():
        for square in doc.diagrams.values():
            c = classify(square)
            if c.strong_lipman:
                assert c.lipman.is_yes
            if c.lipman.is_yes:
                assert c.maranesi


# -- contraction -------------------------------------------------------------------


def test_identity_square_contraction():
    seq = node()
    square = DiagramSquare.identity_square(seq)
    for mode in Mode:
        r = contraction_check(square, mode, elems(seq.top, "t", "t^2", "t^3 - t"))
        assert not r.violations and not r.failures


def test_radicial_base_change_keeps_memberships(docs):
    doc = docs["radicial"]
    square = doc.diagrams["base_change_eps"]
    B = square.top.top
    r = contraction_check(square, Mode.WN, elems(B, "t", "t^2", "t + t^3"))
    assert all(row["top"] == row["bottom"] for row in r.rows)
    assert r.theorems


def test_node_identity_contraction_rejects_parameter():
    seq = node()
    r = contraction_check(DiagramSquare.identity_square(seq), "wn", [seq.top("t")])
    assert r.rows == [{"element": "t", "image": "t", "top": False, "bottom": False}]


def test_image_law_on_every_corpus_square(docs):
    for doc in docs.values():
        for square in doc.diagrams.values():
            tests = doc.testsets_for(square.top.top)
            for xs in tests.values():
                r = contraction_check(square, Mode.WN, xs)
                assert not r.violations, (square.name, r.violations)


def test_theorem_names_are_known(docs):
    for doc in docs.values():
        for square in doc.diagrams.values():
            c = classify(square)
            assert set(contraction_check(square, "wn", [], classification=c).theorems) <= set(WN_THEOREMS)
            assert set(contraction_check(square, "lip", [], classification=c).theorems) <= set(LIP_THEOREMS)


# -- quotients ---------------------------------------------------------------------


def test_quotient_by_zero_ideal():
    seq = cusp()
    r = quotient_check(seq, seq.mid.ideal([]), elems(seq.top, "t", "t^2"))
    assert all(row["B"] == row["B/IB"] for row in r.rows)
    assert not r.build_breaking


def test_cusp_quotient_by_a():
    seq = cusp()
    r = quotient_check(seq, seq.mid.ideal(["a"]), elems(seq.top, "t"))
    assert r.rows == [{"element": "t", "class": "t", "B": True, "B/IB": True}]
    assert not r.build_breaking


def test_quotient_by_unit_ideal_is_zero_ring():
    seq = cusp()
    r = quotient_check(seq, seq.mid.ideal(["1"]), elems(seq.top, "t", "t^2 + 1"))
    assert r.extra["quotient_is_zero"]
    assert all(row["B/IB"] for row in r.rows)
    assert not r.build_breaking


def test_quotient_reverse_direction_needs_nil_extension():
    # A = Q[a] -> Q[t], a -> t^2: t is not in the weak normalization, yet its
    # class in Q[t]/(t^2) is, because IB = (t^2) is not nil in Q[t]
    seq = make_sequence(["a"], [], ["t"], [], {"a": "t^2"})
    r = quotient_check(seq, seq.mid.ideal(["a"]), elems(seq.top, "t"))
    assert r.rows == [{"element": "t", "class": "t", "B": False, "B/IB": True}]
    assert r.reverse_failures == ["t"]
    assert not r.reverse_guaranteed
    assert not r.build_breaking


# -- idempotency -------------------------------------------------------------------


def test_idempotency_without_witnesses():
    seq = cusp()
    r = idempotency_check(seq, [], elems(seq.top, "t", "t^2"))
    assert all(row["A"] == row["A''"] for row in r.rows)


def test_cusp_idempotency_with_parameter():
    seq = cusp()
    r = idempotency_check(seq, [seq.top("t")], elems(seq.top, "t", "t + 1", "t^4"))
    assert [(row["A"], row["A''"]) for row in r.rows] == [(True, True)] * 3
    assert not r.build_breaking


def test_node_idempotency_on_parameter():
    seq = node()
    r = idempotency_check(seq, [], elems(seq.top, "t"))
    assert r.rows == [{"element": "t", "A": False, "A''": False}]


def test_idempotency_rejects_non_members():
    seq = node()
    with pytest.raises(InvalidWitness):
        idempotency_check(seq, [seq.top("t")], [])
