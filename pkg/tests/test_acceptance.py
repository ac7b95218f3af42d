"""Acceptance criteria; each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline
(they are printed even under output capture).
"""

import json
import random
import subprocess
import sys
from itertools import product

import pytest
import sympy
from conftest import CORPUS, cusp, node

from satnorm import (
    Mode,
    Poly,
    build_tensor_square,
    classify,
    contraction_check,
    idempotency_check,
    is_radicial,
    is_unramified,
    lip_member,
    load_corpus,
    monomial_closure_member,
    quotient_check,
    ring,
    unramified_witness,
    wn_member,
)
from satnorm.saturation import minimal_dependence

SEED = 20240611
RANDOM_ELEMENTS = 50
RANDOM_PAIRS = 100


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}"
            print(f"\n{line}" + (f" ({detail})" if detail else ""))
        assert ok, detail or title

    return emit


@pytest.fixture(scope="module")
def documents():
    return [load_corpus(p) for p in sorted(CORPUS.glob("*.json"))]


def instances(documents):
    """Every sequence of every corpus document, once per document."""
    for doc in documents:
        for name, seq in doc.sequences.items():
            yield f"{doc.name}:{name}", seq


def random_poly(rng, R, terms=3, max_deg=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(0, max_deg) for _ in R.vars)
        out[e] = rng.randint(-3, 3)
    return Poly.from_terms(R, out)


def test_criterion_01_cusp_weak_normality(verdict):
    sq = build_tensor_square(cusp())
    B, A = sq.seq.top, sq.seq.mid
    t_res = wn_member(sq, B("t"))
    a_res = wn_member(sq, sq.seq.g(A("a")))
    # hand computation, checked with sympy: (u - v)^3 reduces to 0 modulo (u^2 - v^2, u^3 - v^3)
    u, v = sympy.symbols("u v")
    gb = sympy.groebner([u**2 - v**2, u**3 - v**3], u, v, order="grevlex")
    oracle = gb.reduce(sympy.expand((u - v) ** 3))[1] == 0
    ok = t_res.member and a_res.member and oracle and t_res.exponent == 3
    verdict(1, "cusp: t and g(a) are weakly normal members", ok,
            f"t={t_res.member} exponent={t_res.exponent} g(a)={a_res.member}")


def test_criterion_02_node_non_membership(verdict):
    sq = build_tensor_square(node())
    res = wn_member(sq, sq.seq.top("t"))
    verdict(2, "node: t is not a member", not res.member, f"member={res.member}")


def test_criterion_03_containment_chain(verdict, documents):
    rng = random.Random(SEED)
    bad, checked = [], 0
    for label, seq in instances(documents):
        sq = build_tensor_square(seq)
        B, A = seq.top, seq.mid
        elements = [random_poly(rng, B.ring) for _ in range(RANDOM_ELEMENTS)]
        for tests in (load_corpus_tests(documents, label, B)):
            elements.extend(tests)
        for x in elements:
            x = B.reduce(x)
            if lip_member(sq, x).is_yes and not wn_member(sq, x).member:
                bad.append(f"{label}: {x}")
            checked += 1
        for _ in range(10):
            x = seq.g(A.reduce(random_poly(rng, A.ring, max_deg=2)))
            lip, wn = lip_member(sq, x), wn_member(sq, x)
            if not (lip.is_yes and wn.member):
                bad.append(f"{label}: image {x}")
            checked += 1
    verdict(3, "Lipschitz Yes implies weakly normal; images are (Yes, true)", not bad,
            f"{checked} checks, {len(bad)} bad {bad[:3]}")


def load_corpus_tests(documents, label, B):
    name = label.split(":")[0]
    doc = next(d for d in documents if d.name == name)
    return list(doc.testsets_for(B).values())


def test_criterion_04_subalgebra_closure(verdict, documents):
    rng = random.Random(SEED + 4)
    bad, pairs = [], 0
    for label, seq in instances(documents):
        sq = build_tensor_square(seq)
        B, A = seq.top, seq.mid
        pool = []
        for _ in range(40):
            x = B.reduce(random_poly(rng, B.ring, terms=2, max_deg=2))
            if wn_member(sq, x):
                pool.append(x)
        pool += [seq.g(A.reduce(random_poly(rng, A.ring, terms=2, max_deg=1))) for _ in range(10)]
        for _ in range(RANDOM_PAIRS):
            x, y = rng.choice(pool), rng.choice(pool)
            r = rng.randint(-5, 5)
            for z, what in ((x + y, "sum"), (B.reduce(x * y), "product"), (r * x, "scaling")):
                if not wn_member(sq, z):
                    bad.append(f"{label}: {what} of {x}, {y}")
            pairs += 1
    verdict(4, "weak normalization closed under +, *, scaling", not bad,
            f"{pairs} pairs, {len(bad)} bad {bad[:3]}")


def test_criterion_05_image_law(verdict, documents):
    bad, rows = [], 0
    for doc in documents:
        for name, square in doc.diagrams.items():
            for set_name, xs in doc.testsets_for(square.top.top).items():
                r = contraction_check(square, Mode.WN, xs)
                rows += len(r.rows)
                bad += [f"{doc.name}:{name}:{set_name}:{x}" for x in r.violations]
    verdict(5, "top membership implies bottom membership on every square", not bad and rows > 0,
            f"{rows} rows, violations {bad[:3]}")


def test_criterion_06_radicial_vs_unramified(verdict, documents):
    w = next(d for d in documents if d.name == "witnesses.json").morphisms
    split = unramified_witness(w["split_points"])
    facts = {
        "localization radicial": is_radicial(w["localization"]),
        "dual numbers radicial": is_radicial(w["dual_numbers"]),
        "dual numbers not unramified": not is_unramified(w["dual_numbers"]),
        "split points not radicial": not is_radicial(w["split_points"]),
        "split points unramified": split.unramified,
        "idempotent verified": split.verified and split.idempotent is not None,
    }
    failed = [k for k, ok in facts.items() if not ok]
    verdict(6, "radicial/unramified witnesses", not failed, f"e' = {split.idempotent}; failed {failed}")


def test_criterion_07_strong_lipman_from_surjective(verdict, documents):
    found, bad = [], []
    for doc in documents:
        for name, square in doc.diagrams.items():
            c = classify(square)
            if c.f_A.surjective:
                found.append(name)
                if not c.strong_lipman:
                    bad.append(name)
    verdict(7, "surjective f_A gives strong Lipman", len(found) >= 3 and not bad,
            f"{len(found)} squares {found}, failing {bad}")


def test_criterion_08_radicial_base_change(verdict, documents):
    doc = next(d for d in documents if d.name == "radicial.json")
    square = doc.diagrams["base_change_eps"]
    B = square.top.top
    xs = [B(s) for s in ("t", "t^2", "t + t^3", "t^5")]
    r = contraction_check(square, Mode.WN, xs)
    # every element of Q[t] is weakly normal over the cusp, on both rows
    expected = [(True, True)] * 4
    got = [(row["top"], row["bottom"]) for row in r.rows]
    verdict(8, "radicial base change keeps memberships", got == expected, f"rows {got}")


def test_criterion_09_quotient_commutation(verdict):
    seq = cusp()
    xs = [seq.top(s) for s in ("t", "t^2", "t + t^3", "t^5", "t + 1", "t^4", "2*t^5 - t", "3")]
    r = quotient_check(seq, seq.mid.ideal(["a"]), xs)
    mismatched = [row["element"] for row in r.rows if row["B"] != row["B/IB"]]
    verdict(9, "cusp modulo (a): rows B and B/IB agree", not mismatched, f"mismatched {mismatched}")


def test_criterion_10_idempotency(verdict):
    seq = cusp()
    xs = [seq.top(s) for s in ("t", "t^2", "t + t^3", "t^5", "t + 1", "t^4")]
    r = idempotency_check(seq, [seq.top("t")], xs)
    mismatched = [row["element"] for row in r.rows if row["A"] != row["A''"]]
    verdict(10, "cusp enlarged by t: memberships unchanged", not mismatched, f"mismatched {mismatched}")


def test_criterion_11_monomial_sweep(verdict):
    R = ring("u v w")
    ideals = {
        "(u^2, v^2)": [(2, 0, 0), (0, 2, 0)],
        "(u^3, v^3)": [(3, 0, 0), (0, 3, 0)],
        "(u^2, u*v^3)": [(2, 0, 0), (1, 3, 0)],
    }
    from satnorm import Ideal

    bad, count = [], 0
    for label, gens in ideals.items():
        I = Ideal(R, [R.monomial(g) for g in gens])
        for e in product(range(7), repeat=3):
            if sum(e) > 6:
                continue
            count += 1
            found = minimal_dependence(R.monomial(e), I, 6) is not None
            if found != monomial_closure_member(e, gens):
                bad.append(f"{label}: {e}")
    verdict(11, "dependence search matches the Newton polyhedron", not bad,
            f"{count} monomials, disagreements {bad[:3]}")


def test_criterion_12_lipschitz_soundness(verdict):
    sq = build_tensor_square(cusp())
    v = lip_member(sq, sq.seq.top("t"), bound=6)
    verdict(12, "cusp: t is never a Lipschitz Yes", not v.is_yes, f"answer {v.answer.value}")


def test_criterion_13_determinism(verdict, tmp_path):
    outputs = []
    for k in range(2):
        out = tmp_path / f"suite{k}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "satnorm", "suite", "--input", str(CORPUS), "--no-timing",
             "--out", str(out)],
            capture_output=True, text=True, check=False,
        )
        outputs.append((proc.returncode, out.read_bytes() if out.exists() else b""))
    (code0, a), (code1, b) = outputs
    ok = code0 == code1 == 0 and a == b and "timing" not in json.loads(a)
    verdict(13, "suite reports are byte-identical", ok, f"exit codes {code0}, {code1}; {len(a)} bytes")
