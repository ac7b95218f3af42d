"""Commutative squares of sequences, their classification, morphism
predicates, and the membership-level contraction verifiers.

A square is::

    R  --tau-->  A  --g-->  B
    |f_R         |f_A       |f
    R' --tau'--> A' --g'--> B'

Contraction is verified pointwise on finite test sets.  A failure is
build-breaking only when the square's certified hypotheses match one of
the contraction theorems listed in :data:`WN_THEOREMS` / :data:`LIP_THEOREMS`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import (
    AlgebraMorphism,
    PresentedAlgebra,
    Sequence,
    TensorSquare,
    build_bridge,
    build_tensor_square,
    compose,
    failing_relations,
    identity,
    morphisms_agree,
    tensor_over,
)
from .errors import CompositionMismatch, InvalidMorphism, InvalidWitness, NonCommuting, RingMismatch
from .groebner import groebner_basis, lift
from .ideals import (
    Ideal,
    is_idempotent,
    is_nil_ideal,
    kernel_of_morphism,
    power_generators,
    radical_membership,
    subalgebra_membership,
)
from .order import BlockOrder
from .poly import Poly, PolyRing
from .saturation import DEFAULT_DEPENDENCE_BOUND, Answer, Verdict3, closure_verdict, lip_member, wn_member


class Mode(str, enum.Enum):
    WN = "wn"
    LIP = "lip"


def _require_valid(psi: AlgebraMorphism):
    bad = failing_relations(psi)
    if bad:
        raise InvalidMorphism(f"{psi.name or 'morphism'} does not respect relation {bad[0]}")


# -- morphism predicates ---------------------------------------------------------


def is_surjective(psi: AlgebraMorphism) -> bool:
    """Every target variable lies in the subalgebra generated by the images."""
    _require_valid(psi)
    T = psi.target
    if T.is_zero_ring():
        return True
    return all(
        subalgebra_membership(y, list(psi.images), T.relations) is not None for y in T.gens()
    )


def _block_ring(T: PresentedAlgebra, j: int, m: int):
    """Ring [other target vars] > [y_j] > [w1..wm] with its block order."""
    n = T.ring.nvars
    others = [i for i in range(n) if i != j]
    names = [T.vars[i] for i in others] + [T.vars[j]] + [f"_w{k}" for k in range(m)]
    ring = PolyRing(T.field, tuple(names))
    positions = [0] * n
    for slot, i in enumerate(others):
        positions[i] = slot
    positions[j] = n - 1
    blocks = (tuple(range(n - 1)), (n - 1,))
    return ring, positions, BlockOrder(blocks)


def is_integral(psi: AlgebraMorphism, bound: int = DEFAULT_DEPENDENCE_BOUND) -> Verdict3:
    """Each target variable is a root of a monic polynomial over the image.

    Decided through a Groebner basis of the graph ideal in a block order
    that puts one target variable just above the image tags: a monic
    equation exists iff some basis element has a pure power of that
    variable as leading monomial, and that element is the certificate.
    """
    _require_valid(psi)
    T = psi.target
    if T.is_zero_ring():
        return Verdict3.yes({"kind": "monic", "equations": {}, "note": "zero ring"})
    m = psi.source.ring.nvars
    n = T.ring.nvars
    equations = {}
    for j, y in enumerate(T.vars):
        ring, positions, order = _block_ring(T, j, m)
        polys = [r.relabel(ring, positions) for r in T.relations]
        for k, im in enumerate(psi.images):
            w = ring.var(f"_w{k}")
            polys.append(w - im.relabel(ring, positions))
        gb = groebner_basis(polys, order, ring=ring)
        below = [g for g in gb if not any(any(e[: n - 1]) for e in g.terms)]
        monic = [g for g in below if _pure_power(g.leading_term(order)[0], n - 1)]
        if monic:
            g = min(monic, key=lambda g: g.leading_term(order)[0][n - 1])
            equations[y] = _format_monic(g, n, y, psi.source.vars)
            continue
        if not any(e[n - 1] for g in below for e in g.terms):
            return Verdict3.no({"kind": "transcendental", "variable": y})
        return Verdict3.no({"kind": "no-monic-leading-term", "variable": y})
    degree = max((eq["degree"] for eq in equations.values()), default=0)
    cert = {"kind": "monic", "equations": equations}
    if degree > bound:
        cert["exceeds_bound"] = bound
    return Verdict3.yes(cert)


def _pure_power(exp, slot):
    return exp[slot] > 0 and all(v == 0 for i, v in enumerate(exp) if i != slot)


def _format_monic(g: Poly, n: int, y: str, source_vars) -> dict:
    """Render a monic equation with coefficients in the source variables."""
    root = "X"
    while root in source_vars:
        root += "_"
    src = PolyRing(g.ring.field, (root,) + tuple(source_vars))
    terms = {}
    for e, c in g.terms.items():
        key = (e[n - 1],) + e[n:]
        terms[key] = c
    degree = max(e[n - 1] for e in g.terms)
    return {"variable": y, "degree": degree, "equation": str(Poly(src, terms))}


def _tensor_kernel(psi: AlgebraMorphism):
    """T ⊗_S T and the ideal ker(T⊗_S T -> T) generated by the Δ(t_j)."""
    _require_valid(psi)
    tensor = tensor_over(psi.source, psi.target, psi)
    alg = tensor.algebra
    deltas = [tensor.diagonal(y) for y in psi.target.gens()]
    return tensor, Ideal(alg.ring, deltas, alg.relations)


def is_radicial(psi: AlgebraMorphism) -> bool:
    """ker(T⊗_S T -> T) is a nil ideal."""
    _, K = _tensor_kernel(psi)
    return is_nil_ideal(K)


@dataclass(frozen=True)
class UnramifiedResult:
    unramified: bool
    idempotent: Poly | None = None
    verified: bool = False

    def __bool__(self):
        return self.unramified

    def to_json(self):
        return {
            "unramified": self.unramified,
            "idempotent": None if self.idempotent is None else str(self.idempotent),
            "idempotent_verified": self.verified,
        }


def _det(M, reduce):
    n = len(M)
    if n == 0:
        return None
    if n == 1:
        return M[0][0]
    total = None
    for c in range(n):
        if not M[0][c]:
            continue
        minor = [row[:c] + row[c + 1 :] for row in M[1:]]
        term = reduce(M[0][c] * _det(minor, reduce))
        term = term if c % 2 == 0 else -term
        total = term if total is None else total + term
    return reduce(total) if total is not None else M[0][0] * 0


def unramified_witness(psi: AlgebraMorphism, extract: bool = True) -> UnramifiedResult:
    """Decide ker γ = (ker γ)^2 and optionally extract its idempotent generator.

    Writing each generator Δ_j = Σ_k m_jk Δ_k with m_jk ∈ ker γ, the
    element e = 1 - det(I - M) lies in ker γ, fixes every Δ_j and is
    idempotent.
    """
    tensor, K = _tensor_kernel(psi)
    alg = tensor.algebra
    deltas = list(K.gens)
    if not deltas:
        zero = alg.ring.zero()
        return UnramifiedResult(True, zero, True)
    squares = K.with_gens(power_generators(deltas, 2))
    if not all(squares.contains(d) for d in deltas):
        return UnramifiedResult(False)
    if not extract:
        return UnramifiedResult(True)
    pairs = [(a, b) for a in range(len(deltas)) for b in range(a, len(deltas))]
    prods = [deltas[a] * deltas[b] for a, b in pairs]
    rels = list(alg.relations)
    n = len(deltas)
    M = []
    for d in deltas:
        cof = lift(d, prods + rels)
        row = [alg.ring.zero() for _ in range(n)]
        for (a, b), c in zip(pairs, cof):
            row[a] = row[a] + c * deltas[b]
        M.append(row)
    one = alg.ring.one()
    I_minus = [[(one if i == k else alg.ring.zero()) - M[i][k] for k in range(n)] for i in range(n)]
    e = alg.reduce(one - _det(I_minus, alg.reduce))
    ok = (
        is_idempotent(e, alg.relations)
        and all(alg.equal(e * d, d) for d in deltas)
        and K.contains(e)
    )
    return UnramifiedResult(True, e, ok)


def is_unramified(psi: AlgebraMorphism) -> bool:
    return unramified_witness(psi, extract=False).unramified


def has_nil_kernel(psi: AlgebraMorphism) -> bool:
    """Every element of ker psi is nilpotent in the source."""
    _require_valid(psi)
    return is_nil_ideal(kernel_of_morphism(psi))


def has_retraction(psi: AlgebraMorphism, h: AlgebraMorphism) -> bool:
    """h ∘ psi is the identity of psi's source (checked on generators)."""
    if h.source != psi.target or h.target != psi.source:
        raise CompositionMismatch(
            f"{h.name or 'h'} must map {psi.target.name} -> {psi.source.name}"
        )
    return morphisms_agree(compose(h, psi), identity(psi.source))


# -- squares ---------------------------------------------------------------------


class DiagramSquare:
    """Two sequences joined by f_R, f_A, f; commutativity is checked on creation."""

    def __init__(self, top: Sequence, bottom: Sequence, f_R, f_A, f, retraction=None, name=""):
        self.top, self.bottom = top, bottom
        self.f_R, self.f_A, self.f = f_R, f_A, f
        self.retraction = retraction
        self.name = name
        for psi, src, tgt in (
            (f_R, top.base, bottom.base),
            (f_A, top.mid, bottom.mid),
            (f, top.top, bottom.top),
        ):
            if psi.source != src or psi.target != tgt:
                raise NonCommuting(f"{psi.name or 'morphism'} must map {src.name} -> {tgt.name}")
            _require_valid(psi)
        if retraction is not None and (
            retraction.source != bottom.top or retraction.target != top.top
        ):
            raise CompositionMismatch("retraction must map B' -> B")
        if not morphisms_agree(compose(bottom.tau, f_R), compose(f_A, top.tau)):
            raise NonCommuting(f"{name}: tau'∘f_R differs from f_A∘tau")
        if not morphisms_agree(compose(bottom.g, f_A), compose(f, top.g)):
            raise NonCommuting(f"{name}: g'∘f_A differs from f∘g")

    @cached_property
    def top_square(self) -> TensorSquare:
        return build_tensor_square(self.top)

    @cached_property
    def bottom_square(self) -> TensorSquare:
        return build_tensor_square(self.bottom)

    @cached_property
    def bridge(self):
        return build_bridge(self.top_square, self.bottom_square, self.f)

    def extension_ideal(self) -> Ideal:
        """ker φ pushed into B'⊗_{R'}B' through fbar."""
        fbar = self.bridge.fbar
        rr = self.bottom_square.tensor_rr
        gens = [fbar(k) for k in self.top_square.phi_kernel.gens]
        return Ideal(rr.ring, gens, rr.relations)

    @classmethod
    def identity_square(cls, seq: Sequence, name="") -> DiagramSquare:
        return cls(seq, seq, identity(seq.base), identity(seq.mid), identity(seq.top),
                   identity(seq.top), name or f"id_{seq.name}")


@dataclass(frozen=True)
class MorphismFlags:
    surjective: bool
    integral: Verdict3
    radicial: bool
    unramified: bool
    kernel_nil: bool
    retraction: bool | None = None

    def to_json(self):
        return {
            "surjective": self.surjective,
            "kernel_nil": self.kernel_nil,
            "integral": self.integral.to_json(),
            "radicial": self.radicial,
            "unramified": self.unramified,
            "retraction": self.retraction,
        }


def morphism_flags(psi, bound=DEFAULT_DEPENDENCE_BOUND, retraction=None) -> MorphismFlags:
    surj = is_surjective(psi)
    integral = (
        Verdict3.yes({"kind": "surjective", "degree": 1}) if surj else is_integral(psi, bound)
    )
    return MorphismFlags(
        surjective=surj,
        integral=integral,
        radicial=is_radicial(psi),
        unramified=is_unramified(psi),
        kernel_nil=has_nil_kernel(psi),
        retraction=None if retraction is None else has_retraction(psi, retraction),
    )


@dataclass(frozen=True)
class ClassificationReport:
    commutes: bool
    maranesi: bool
    strong_lipman: bool
    lipman: Verdict3
    ker_p_nil: bool
    f_R: MorphismFlags
    f_A: MorphismFlags
    f: MorphismFlags

    def to_json(self):
        return {
            "commutes": self.commutes,
            "maranesi": self.maranesi,
            "strong_lipman": self.strong_lipman,
            "lipman": self.lipman.to_json(),
            "ker_p_nil": self.ker_p_nil,
            "flags": {"f_R": self.f_R.to_json(), "f_A": self.f_A.to_json(), "f": self.f.to_json()},
        }


def _combine(verdicts) -> Verdict3:
    verdicts = list(verdicts)
    for v in verdicts:
        if v.is_no:
            return v
    if all(v.is_yes for v in verdicts):
        return Verdict3.yes({"kind": "generators", "parts": [v.certificate for v in verdicts]})
    bound = next(v.certificate.get("bound") for v in verdicts if v.answer is Answer.UNKNOWN)
    return Verdict3.unknown(bound)


def _closure_or_no(d: Poly, I: Ideal, bound: int) -> Verdict3:
    if not radical_membership(d, I):
        return Verdict3.no({"kind": "radical", "element": str(d)})
    return closure_verdict(d, I, bound)


def classify(square: DiagramSquare, bound: int = DEFAULT_DEPENDENCE_BOUND) -> ClassificationReport:
    ext = square.extension_ideal()
    Kp = square.bottom_square.phi_kernel
    maranesi = all(radical_membership(k, ext) for k in Kp.gens) and all(
        radical_membership(e, Kp) for e in ext.gens
    )
    strong = all(ext.contains(k) for k in Kp.gens) and all(Kp.contains(e) for e in ext.gens)
    if strong:
        lipman = Verdict3.yes({"kind": "strong"})
    elif not maranesi:
        lipman = Verdict3.no({"kind": "not-maranesi"})
    else:
        lipman = _combine(
            [_closure_or_no(k, ext, bound) for k in Kp.gens]
            + [_closure_or_no(e, Kp, bound) for e in ext.gens]
        )
    return ClassificationReport(
        commutes=True,
        maranesi=maranesi,
        strong_lipman=strong,
        lipman=lipman,
        ker_p_nil=is_nil_ideal(square.bridge.ker_p),
        f_R=morphism_flags(square.f_R, bound),
        f_A=morphism_flags(square.f_A, bound),
        f=morphism_flags(square.f, bound, square.retraction),
    )


# -- contraction --------------------------------------------------------------------


def _wn_theorems(c: ClassificationReport) -> list:
    # Every route except the retraction one passes through "ker(f⊗f) is nil",
    # which needs ker f nil on top of integrality.
    integral = c.f.integral.is_yes and c.f.kernel_nil
    onto = c.f.surjective and c.f.kernel_nil
    out = []
    if c.maranesi and c.f.retraction and (c.f_R.radicial or c.ker_p_nil):
        out.append("maranesi+radicial-base+retraction")
    if c.maranesi and integral and (c.ker_p_nil or c.f_R.radicial):
        out.append("maranesi+integral+nil-kernel")
    if c.f_R.radicial and c.f_A.radicial and onto:
        out.append("radicial+radicial+surjective")
    if c.f_R.unramified and c.f_A.radicial and onto:
        out.append("unramified+radicial+surjective")
    return out


def _lip_theorems(c: ClassificationReport) -> list:
    if not (c.lipman.is_yes and c.f.kernel_nil):
        return []
    out = []
    if c.f.integral.is_yes and (c.ker_p_nil or c.f_R.radicial):
        out.append("lipman+integral+nil-kernel")
    if c.f_R.unramified and c.f_A.radicial and c.f.surjective:
        out.append("lipman+unramified+radicial+surjective")
    return out


WN_THEOREMS = (
    "maranesi+radicial-base+retraction",
    "maranesi+integral+nil-kernel",
    "radicial+radicial+surjective",
    "unramified+radicial+surjective",
)
LIP_THEOREMS = ("lipman+integral+nil-kernel", "lipman+unramified+radicial+surjective")


def _value(v):
    if isinstance(v, Verdict3):
        return v.answer.value
    return bool(v)


def _yes(v):
    return v.is_yes if isinstance(v, Verdict3) else bool(v)


def _no(v):
    return v.is_no if isinstance(v, Verdict3) else not bool(v)


@dataclass
class ContractionReport:
    mode: Mode
    theorems: list
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    informational: list = field(default_factory=list)

    @property
    def build_breaking(self) -> bool:
        return bool(self.violations) or (bool(self.failures) and bool(self.theorems))

    def to_json(self):
        return {
            "mode": self.mode.value,
            "theorems": self.theorems,
            "rows": self.rows,
            "forward_violations": self.violations,
            "contraction_failures": self.failures,
            "informational": self.informational,
            "build_breaking": self.build_breaking,
        }


def _member(square: TensorSquare, x: Poly, mode: Mode, bound: int):
    if mode is Mode.WN:
        return wn_member(square, x).member
    return lip_member(square, x, bound)


def contraction_check(
    square: DiagramSquare,
    mode: Mode | str,
    test_set,
    bound: int = DEFAULT_DEPENDENCE_BOUND,
    classification: ClassificationReport | None = None,
) -> ContractionReport:
    mode = Mode(mode)
    B = square.top.top
    c = classification or classify(square, bound)
    theorems = _wn_theorems(c) if mode is Mode.WN else _lip_theorems(c)
    report = ContractionReport(mode, theorems)
    for x in test_set:
        if x.ring != B.ring:
            raise RingMismatch(f"test element {x} is not in {B.ring}")
        x = B.reduce(x)
        fx = square.f(x)
        top = _member(square.top_square, x, mode, bound)
        bottom = _member(square.bottom_square, fx, mode, bound)
        row = {"element": str(x), "image": str(fx), "top": _value(top), "bottom": _value(bottom)}
        report.rows.append(row)
        if _yes(top) and _no(bottom):
            report.violations.append(str(x))
        elif _yes(bottom) and _no(top):
            report.failures.append(str(x))
        elif mode is Mode.LIP and (
            (_yes(top) or _yes(bottom)) and not (_yes(top) and _yes(bottom))
        ):
            report.informational.append(str(x))
    return report


# -- quotients and idempotency ---------------------------------------------------------


@dataclass
class TransferReport:
    """Row-by-row comparison of two memberships.

    ``forward_failures`` always break the build; ``reverse_failures`` do so
    only when ``reverse_guaranteed`` is set.
    """

    kind: str
    rows: list = field(default_factory=list)
    forward_failures: list = field(default_factory=list)
    reverse_failures: list = field(default_factory=list)
    reverse_guaranteed: bool = True
    extra: dict = field(default_factory=dict)

    @property
    def build_breaking(self) -> bool:
        return bool(self.forward_failures) or (
            self.reverse_guaranteed and bool(self.reverse_failures)
        )

    def to_json(self):
        return {
            "kind": self.kind,
            **self.extra,
            "rows": self.rows,
            "forward_failures": self.forward_failures,
            "reverse_failures": self.reverse_failures,
            "reverse_guaranteed": self.reverse_guaranteed,
            "build_breaking": self.build_breaking,
        }


def quotient_sequence(seq: Sequence, I: Ideal):
    """R -> A/I -> B/IB together with the two quotient maps."""
    A, B = seq.mid, seq.top
    if I.ring != A.ring:
        raise RingMismatch(f"ideal lives in {I.ring}, not in {A.ring}")
    AI = PresentedAlgebra(f"{A.name}/I", A.ring, A.relations + tuple(I.gens))
    BI = PresentedAlgebra(
        f"{B.name}/IB", B.ring, B.relations + tuple(seq.g(a) for a in I.gens)
    )
    tau = AlgebraMorphism(seq.base, AI, tuple(AI.reduce(im) for im in seq.tau.images), "tau")
    g = AlgebraMorphism(AI, BI, tuple(BI.reduce(im) for im in seq.g.images), "g")
    qseq = Sequence(seq.base, AI, BI, tau, g, f"{seq.name}/I")
    pi_bar = AlgebraMorphism(B, BI, tuple(BI.gens()), "pi_bar")
    return qseq, pi_bar


def quotient_check(seq: Sequence, I: Ideal, test_set) -> TransferReport:
    """wn membership of x in B against that of its class in B/IB.

    Membership always passes down to the quotient.  It comes back up when
    IB is a nil ideal; otherwise a reverse mismatch is reported but does not
    count as a failure (A = k[t^2] in k[t] with I = (t^2) is such a case).
    """
    qseq, pi_bar = quotient_sequence(seq, I)
    top, bottom = build_tensor_square(seq), build_tensor_square(qseq)
    B = seq.top
    extended = Ideal(B.ring, [seq.g(a) for a in I.gens], B.relations)
    report = TransferReport(
        "quotient",
        reverse_guaranteed=is_nil_ideal(extended),
        extra={"ideal": [str(g) for g in I.gens], "quotient_is_zero": qseq.top.is_zero_ring()},
    )
    for x in test_set:
        if x.ring != seq.top.ring:
            raise RingMismatch(f"test element {x} is not in {seq.top.ring}")
        xb = pi_bar(x)
        a, b = wn_member(top, x).member, wn_member(bottom, xb).member
        report.rows.append({"element": str(x), "class": str(xb), "B": a, "B/IB": b})
        if a and not b:
            report.forward_failures.append(str(x))
        if b and not a:
            report.reverse_failures.append(str(x))
    return report


def _fresh_names(count, taken):
    out, k = [], 1
    while len(out) < count:
        name = f"w{k}"
        if name not in taken and name + "_r" not in taken:
            out.append(name)
        k += 1
    return out


def enlarged_sequence(seq: Sequence, wn_gens) -> Sequence:
    """R -> A'' -> B with A'' generated by g(A) and ``wn_gens``."""
    A, B = seq.mid, seq.top
    names = _fresh_names(len(wn_gens), set(A.vars) | set(B.vars))
    ring = PolyRing(A.field, A.vars + tuple(names))
    free = PresentedAlgebra(f"{A.name}''", ring)
    images = tuple(seq.g.images) + tuple(B.reduce(w) for w in wn_gens)
    K = kernel_of_morphism(AlgebraMorphism(free, B, images))
    A2 = PresentedAlgebra(f"{A.name}''", ring, tuple(K.gens))
    apos = list(range(A.ring.nvars))
    tau = AlgebraMorphism(
        seq.base, A2, tuple(A2.reduce(im.relabel(ring, apos)) for im in seq.tau.images), "tau''"
    )
    g = AlgebraMorphism(A2, B, images, "g''")
    return Sequence(seq.base, A2, B, tau, g, f"{seq.name}''")


def idempotency_check(seq: Sequence, wn_gens, test_set) -> TransferReport:
    """Membership relative to A'' = g(A)[wn_gens] agrees with membership relative to A."""
    sq = build_tensor_square(seq)
    for w in wn_gens:
        if w.ring != seq.top.ring:
            raise RingMismatch(f"witness {w} is not in {seq.top.ring}")
        if not wn_member(sq, w):
            raise InvalidWitness(f"{w} is not in the weak normalization")
    seq2 = enlarged_sequence(seq, list(wn_gens))
    sq2 = build_tensor_square(seq2)
    report = TransferReport(
        "idempotency",
        extra={
            "wn_gens": [str(w) for w in wn_gens],
            "enlarged_relations": [str(r) for r in seq2.mid.relations],
        },
    )
    for x in test_set:
        if x.ring != seq.top.ring:
            raise RingMismatch(f"test element {x} is not in {seq.top.ring}")
        a, b = wn_member(sq, x).member, wn_member(sq2, x).member
        report.rows.append({"element": str(x), "A": a, "A''": b})
        if b and not a:
            report.forward_failures.append(str(x))
        if a and not b:
            report.reverse_failures.append(str(x))
    return report
