"""Theorem-level decompositions and hypothesis checkers for triangular
algebras: the extremal-plus-inner splitting of twisted biderivations, the
block description and properness of twisted commuting maps, the block
structure of corner-preserving endomorphisms, and partibility certificates.

Every checker verifies its hypotheses before asserting a conclusion; a
conclusion that fails with verified hypotheses raises TheoremViolation, which
is a reportable finding rather than a silent failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algcore import (
    Bimodule,
    FinAlgebra,
    TriAlgebra,
    build_triangular,
    is_ideal,
    project_subspace,
    radical,
    sigma_center_direct,
    structure_checks,
    subspace_product,
    validate_algebra,
)
from .errors import (
    CharTooSmall,
    CentralElement,
    NotAutomorphism,
    NotBlockPreserving,
    NotEndomorphism,
    NotFaithful,
    NotMPreserving,
    NotSigmaBiderivation,
    NotSigmaCommuting,
    PreconditionFails,
    TheoremViolation,
)
from .exactla import Mat, Subspace, solve_linear
from .sigmamaps import (
    AutBlocks,
    BilinMap,
    LinMap,
    block_decompose,
    classify_bilinear,
    classify_linear,
    is_automorphism,
    is_endomorphism,
    sigma_center,
)
from .spaces import extremal_sigma_biderivation, inner_sigma_biderivation

# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class Hypothesis:
    name: str
    verdict: str  # "pass" | "fail" | "undecided"
    evidence: str = ""

    def to_json(self):
        return {"name": self.name, "verdict": self.verdict, "evidence": self.evidence}


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: list = dc_field(default_factory=list)
    verdict: str = ""
    witnesses: list = dc_field(default_factory=list)
    violations: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def all_pass(self) -> bool:
        return all(h.verdict == "pass" for h in self.hypotheses)

    def to_json(self):
        return {
            "theorem": self.theorem,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "violations": self.violations,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# extremal + inner splitting of twisted biderivations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSplit:
    psi: BilinMap
    residual: BilinMap
    corner_value: tuple  # D(p, p)


def extremal_split(tri: TriAlgebra, D: BilinMap, sigma: LinMap) -> ExtremalSplit:
    """Split D into the extremal part attached to D(p, p) plus a residual
    vanishing at (p, p)."""
    alg = tri.total
    v = classify_bilinear("sigma_biderivation", alg, D, sigma)
    if not v.holds:
        raise NotSigmaBiderivation(str(v.witness.indices if v.witness else ""))
    x0 = D.apply(tri.p, tri.p)
    zero = alg.zero_vector()
    if x0 == zero:
        return ExtremalSplit(BilinMap.zero(alg.field, alg.dim), D, x0)
    # the corner value must land in the strictly upper block and outside Z_sigma
    pxq = alg.mul_vec(alg.mul_vec(tri.p, x0), tri.q)
    if pxq != x0:
        raise TheoremViolation("D(p, p) is not concentrated in the corner block")
    try:
        psi = extremal_sigma_biderivation(alg, x0, sigma)
    except (CentralElement, PreconditionFails) as exc:
        raise TheoremViolation("extremal construction rejected D(p, p): %s" % exc) from exc
    residual = D - psi
    if residual.apply(tri.p, tri.p) != zero:
        raise TheoremViolation("residual does not vanish at (p, p)")
    rv = classify_bilinear("sigma_biderivation", alg, residual, sigma)
    if not rv.holds:
        raise TheoremViolation("residual is not a twisted biderivation")
    return ExtremalSplit(psi, residual, x0)


# ---------------------------------------------------------------------------
# inner witnesses for twisted biderivations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InnerWitness:
    lam: tuple  # element of the total algebra, twisted-central
    lam_a: tuple  # its corner-A part


def inner_biderivation_witness(tri: TriAlgebra, D0: BilinMap, sigma: LinMap,
                               hypotheses: TheoremReport | None = None
                               ) -> InnerWitness | None:
    """Solve D0 = lambda [.,.] over the twisted center; None when not inner.

    When a hypotheses report with all four conditions passing is supplied (or
    computed by the caller), a None result is escalated to a finding.
    """
    alg = tri.total
    v = classify_bilinear("sigma_biderivation", alg, D0, sigma)
    if not v.holds:
        raise NotSigmaBiderivation(str(v.witness.indices if v.witness else ""))
    zero = alg.zero_vector()
    if D0.apply(tri.p, tri.p) != zero:
        raise PreconditionFails("inner witnesses require D(p, p) = 0")
    blocks = block_decompose(tri, sigma)
    z_sigma, _ = sigma_center(tri, blocks, want_eta=False)
    field = alg.field
    n = alg.dim
    zdim = z_sigma.dim
    rows = []
    rhs = []
    comms = [[alg.commutator(alg.basis_vector(i), alg.basis_vector(j)) for j in range(n)]
             for i in range(n)]
    for i in range(n):
        for j in range(n):
            cij = comms[i][j]
            gens = [alg.mul_vec(z, cij) for z in z_sigma.basis]
            target = D0.value(i, j)
            for m in range(n):
                rows.append([g[m] for g in gens])
                rhs.append(target[m])
    coeffs = solve_linear(Mat(field, rows, zdim), rhs)
    if coeffs is None:
        if hypotheses is not None and hypotheses.all_pass():
            raise TheoremViolation("hypotheses verified but a corner-vanishing twisted "
                                   "biderivation is not inner")
        return None
    lam = [field.zero] * n
    for c, z in zip(coeffs, z_sigma.basis):
        if c == field.zero:
            continue
        for k, w in enumerate(z):
            lam[k] = field.add(lam[k], field.mul(c, w))
    lam = tuple(lam)
    delta = inner_sigma_biderivation(alg, lam, sigma) if any(v_ != field.zero for v_ in lam) \
        else BilinMap.zero(field, n)
    if delta != D0:
        raise TheoremViolation("inner witness solve returned a non-witness")
    lam_a = tri.part_a(lam)
    # cross-check the corner action: D0(p, m) = lam_a . m on every corner basis vector
    for j in tri.range_m:
        m = alg.basis_vector(j)
        if D0.apply(tri.p, m) != alg.mul_vec(lam, m):
            raise TheoremViolation("inner witness fails D(p, m) = lambda_A m")
    return InnerWitness(lam, lam_a)


def innerness_hypotheses(tri: TriAlgebra, blocks: AutBlocks,
                         budget: int | None = None) -> TheoremReport:
    """The four innerness hypotheses for corner-vanishing twisted biderivations.

    (i) the diagonal projections of the twisted center fill the twisted
    centers of the corners; (ii) a noncommutative corner exists; (iii) no
    nonzero twisted-central element annihilates a nonzero element (strong
    reading of the annihilation condition, see notes); (iv) every
    intertwining map on the corner bimodule is of scalar-action form.
    """
    from .algcore import enumeration_budget

    if budget is None:
        budget = enumeration_budget()
    report = TheoremReport("inner twisted biderivations")
    z_sigma, _ = sigma_center(tri, blocks, want_eta=False)
    da, db = tri.A.dim, tri.B.dim

    # (i) projections of the twisted center
    pa = project_subspace(z_sigma, tri.range_a, da)
    pb = project_subspace(z_sigma, tri.range_b, db)
    zfa = sigma_center_direct(tri.A, blocks.f.mat)
    zgb = sigma_center_direct(tri.B, blocks.g.mat)
    ok = pa == zfa and pb == zgb
    report.hypotheses.append(Hypothesis(
        "center_projections", "pass" if ok else "fail",
        "dim pi_A(Z)=%d vs dim Z_f(A)=%d; dim pi_B(Z)=%d vs dim Z_g(B)=%d"
        % (pa.dim, zfa.dim, pb.dim, zgb.dim)))

    # (ii) a noncommutative corner
    noncomm = (not tri.A.is_commutative()) or (not tri.B.is_commutative())
    report.hypotheses.append(Hypothesis(
        "noncommutative_corner", "pass" if noncomm else "fail",
        "A commutative: %s, B commutative: %s" % (tri.A.is_commutative(), tri.B.is_commutative())))

    # (iii) no nonzero twisted-central annihilator
    report.hypotheses.append(_annihilation_hypothesis(tri, z_sigma, budget))

    # (iv) intertwiners are of scalar-action form
    s1 = _intertwiner_space(tri, blocks)
    s2 = _scalar_action_space(tri, blocks, zfa, zgb)
    if not s1.contains(s2):
        raise TheoremViolation("scalar-action maps must always intertwine")
    ok4 = s1 == s2
    report.hypotheses.append(Hypothesis(
        "intertwiners_scalar", "pass" if ok4 else "fail",
        "dim intertwiners=%d, dim scalar-action=%d" % (s1.dim, s2.dim)))

    report.verdict = "all hypotheses pass" if report.all_pass() else "hypotheses incomplete"
    report.notes.append(
        "annihilation condition implemented in the strong reading: no nonzero "
        "twisted-central element annihilates any nonzero element")
    return report


def _annihilation_hypothesis(tri: TriAlgebra, z_sigma: Subspace, budget: int) -> Hypothesis:
    field = tri.field
    alg = tri.total
    if z_sigma.dim == 0:
        return Hypothesis("central_annihilation", "pass", "twisted center is zero")
    p = field.characteristic
    if p != 0:
        count = p ** z_sigma.dim
        if count > budget:
            return Hypothesis("central_annihilation", "undecided",
                              "span of size %d exceeds budget" % count)
        import itertools

        for combo in itertools.product(range(p), repeat=z_sigma.dim):
            if all(c == 0 for c in combo):
                continue
            lam = [field.zero] * alg.dim
            for c, z in zip(combo, z_sigma.basis):
                for k, w in enumerate(z):
                    lam[k] = field.add(lam[k], field.mul(field.coerce(c), w))
            if alg.left_mul_mat(tuple(lam)).rank() != alg.dim:
                return Hypothesis("central_annihilation", "fail",
                                  "lambda with singular left multiplication found")
        return Hypothesis("central_annihilation", "pass",
                          "exhaustive over %d elements" % (p ** z_sigma.dim))
    if z_sigma.dim == 1:
        lam = z_sigma.basis[0]
        if alg.left_mul_mat(lam).rank() == alg.dim:
            return Hypothesis("central_annihilation", "pass", "rank test on the 1-dim center")
        return Hypothesis("central_annihilation", "fail", "basis element annihilates a vector")
    return Hypothesis("central_annihilation", "undecided",
                      "rational twisted center of dim > 1")


def _m_action_mats(tri: TriAlgebra):
    """Left action of each A basis vector and right action of each B basis
    vector as dm x dm matrices."""
    field = tri.field
    dm = tri.M.dim_m
    lefts = []
    for i in range(tri.A.dim):
        cols = [tri.M.left[i][j] for j in range(dm)]
        lefts.append(Mat(field, list(zip(*cols)) if cols else [], dm))
    rights = []
    for k in range(tri.B.dim):
        cols = [tri.M.right[j][k] for j in range(dm)]
        rights.append(Mat(field, list(zip(*cols)) if cols else [], dm))
    return lefts, rights


def _intertwiner_space(tri: TriAlgebra, blocks: AutBlocks) -> Subspace:
    """Maps xi on M with xi(a m b) = f(a) xi(m) b, as a flattened subspace."""
    field = tri.field
    dm = tri.M.dim_m
    zero = field.zero
    lefts, rights = _m_action_mats(tri)

    def left_of(avec) -> Mat:
        acc = Mat.zeros(field, dm, dm)
        for i, c in enumerate(avec):
            if c != zero:
                acc = acc + lefts[i].scale(c)
        return acc

    rows = []
    for i in range(tri.A.dim):
        fa_mat = left_of(blocks.f.image_of_basis(i))
        for k in range(tri.B.dim):
            # target transform T = R_b L_f(a); constraint xi(w) = T xi(e_j) with w = a e_j b
            trans = (rights[k] @ fa_mat).rows
            for j in range(dm):
                m = [zero] * dm
                m[j] = field.one
                w = tri.act_right(tri.act_left(tri.A.basis_vector(i), m), tri.B.basis_vector(k))
                for mp in range(dm):
                    row = {}
                    for t, wt in enumerate(w):
                        if wt != zero:
                            row[mp * dm + t] = field.add(row.get(mp * dm + t, zero), wt)
                    for t in range(dm):
                        v = trans[mp][t]
                        if v != zero:
                            key = t * dm + j
                            nv = field.sub(row.get(key, zero), v)
                            if nv == zero:
                                row.pop(key, None)
                            else:
                                row[key] = nv
                    if row:
                        rows.append(row)
    from .exactla import kernel_sparse

    return kernel_sparse(field, rows, dm * dm)


def _scalar_action_space(tri: TriAlgebra, blocks: AutBlocks,
                         zfa: Subspace, zgb: Subspace) -> Subspace:
    """Span of the maps m -> lam0 m and m -> nu(m) mu0 over the twisted corners."""
    field = tri.field
    dm = tri.M.dim_m
    gens = []
    for lam0 in zfa.basis:
        images = [tri.act_left(lam0, _unit_m(field, dm, j)) for j in range(dm)]
        gens.append(LinMap.from_images(field, images, dm, dm).flatten())
    for mu0 in zgb.basis:
        images = [tri.act_right(blocks.nu.image_of_basis(j), mu0) for j in range(dm)]
        gens.append(LinMap.from_images(field, images, dm, dm).flatten())
    return Subspace.from_vectors(field, dm * dm, gens)


def _unit_m(field, dm, j):
    m = [field.zero] * dm
    m[j] = field.one
    return m


# ---------------------------------------------------------------------------
# twisted commuting maps: block description, properness, sufficiency
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutingBlocks:
    delta1: LinMap  # A -> A
    delta2: LinMap  # M -> A
    delta3: LinMap  # B -> A
    mu1: LinMap  # A -> B
    mu2: LinMap  # M -> B
    mu3: LinMap  # B -> B


def commuting_blocks(tri: TriAlgebra, theta: LinMap, blocks: AutBlocks
                     ) -> tuple[CommutingBlocks, TheoremReport]:
    """Extract the six corner blocks of a twisted commuting map and verify the
    whole block description, including the closed form of its M-block."""
    alg = tri.total
    v = classify_linear("sigma_commuting", alg, theta, blocks.source)
    if not v.holds:
        raise NotSigmaCommuting(str(v.witness.indices if v.witness else ""))
    if not tri.is_faithful():
        raise NotFaithful("the block description needs a faithful bimodule")
    field = tri.field
    cb = CommutingBlocks(
        delta1=LinMap.from_images(field, [tri.part_a(theta.image_of_basis(j)) for j in tri.range_a],
                                  tri.A.dim, tri.A.dim),
        delta2=LinMap.from_images(field, [tri.part_a(theta.image_of_basis(j)) for j in tri.range_m],
                                  tri.M.dim_m, tri.A.dim),
        delta3=LinMap.from_images(field, [tri.part_a(theta.image_of_basis(j)) for j in tri.range_b],
                                  tri.B.dim, tri.A.dim),
        mu1=LinMap.from_images(field, [tri.part_b(theta.image_of_basis(j)) for j in tri.range_a],
                               tri.A.dim, tri.B.dim),
        mu2=LinMap.from_images(field, [tri.part_b(theta.image_of_basis(j)) for j in tri.range_m],
                               tri.M.dim_m, tri.B.dim),
        mu3=LinMap.from_images(field, [tri.part_b(theta.image_of_basis(j)) for j in tri.range_b],
                               tri.B.dim, tri.B.dim),
    )
    report = TheoremReport("block description of twisted commuting maps")
    _verify_commuting_blocks(tri, theta, blocks, cb, report)
    report.verdict = "all conditions verified"
    return cb, report


def _verify_commuting_blocks(tri: TriAlgebra, theta: LinMap, blocks: AutBlocks,
                             cb: CommutingBlocks, report: TheoremReport):
    field = tri.field
    zero_m = tuple([field.zero] * tri.M.dim_m)
    da, dm, db = tri.A.dim, tri.M.dim_m, tri.B.dim
    d1_one = cb.delta1.apply(tri.A.unit)
    mu1_one = cb.mu1.apply(tri.A.unit)
    d3_one = cb.delta3.apply(tri.B.unit)
    mu3_one = cb.mu3.apply(tri.B.unit)

    def mblock(mvec) -> tuple:
        left = tri.act_left(d1_one, mvec)
        right = tri.act_right(blocks.nu.apply(mvec), mu1_one)
        return tuple(field.sub(x, y) for x, y in zip(left, right))

    # M-block: zero on the corners, the closed form on M
    for j in tri.range_a:
        if tuple(tri.part_m(theta.image_of_basis(j))) != zero_m:
            raise TheoremViolation("Theta(A) has a nonzero M-part")
    for j in tri.range_b:
        if tuple(tri.part_m(theta.image_of_basis(j))) != zero_m:
            raise TheoremViolation("Theta(B) has a nonzero M-part")
    for idx, j in enumerate(tri.range_m):
        got = tuple(tri.part_m(theta.image_of_basis(j)))
        want = mblock(_unit_m(field, dm, idx))
        if got != want:
            raise TheoremViolation("M-block of Theta differs from its closed form")
    # value spaces
    zfa = sigma_center_direct(tri.A, blocks.f.mat)
    zgb = sigma_center_direct(tri.B, blocks.g.mat)
    for j in range(dm):
        if not zfa.contains_vector(cb.delta2.image_of_basis(j)):
            raise TheoremViolation("delta2 does not map into the twisted center of A")
        if not zgb.contains_vector(cb.mu2.image_of_basis(j)):
            raise TheoremViolation("mu2 does not map into the twisted center of B")
    for j in range(da):
        if not zgb.contains_vector(cb.mu1.image_of_basis(j)):
            raise TheoremViolation("mu1 does not map into the twisted center of B")
    for j in range(db):
        if not zfa.contains_vector(cb.delta3.image_of_basis(j)):
            raise TheoremViolation("delta3 does not map into the twisted center of A")
    # (i), (ii): corner commuting conditions
    if not classify_linear("sigma_commuting", tri.A, cb.delta1, blocks.f).holds:
        raise TheoremViolation("delta1 is not twisted-commuting on A")
    if not classify_linear("sigma_commuting", tri.B, cb.mu3, blocks.g).holds:
        raise TheoremViolation("mu3 is not twisted-commuting on B")
    # (iii)
    for i in range(da):
        fa = blocks.f.image_of_basis(i)
        d1a = cb.delta1.image_of_basis(i)
        mu1a = cb.mu1.image_of_basis(i)
        for j in range(dm):
            m = _unit_m(field, dm, j)
            lhs = tuple(field.sub(x, y) for x, y in
                        zip(tri.act_left(d1a, m), tri.act_right(blocks.nu.apply(m), mu1a)))
            rhs = tri.act_left(fa, mblock(m))
            if lhs != rhs:
                raise TheoremViolation("condition (iii) fails on a basis pair")
    # (iv)
    for k in range(db):
        b = tri.B.basis_vector(k)
        d3b = cb.delta3.image_of_basis(k)
        mu3b = cb.mu3.image_of_basis(k)
        for j in range(dm):
            m = _unit_m(field, dm, j)
            nm = blocks.nu.apply(m)
            lhs = tuple(field.sub(x, y) for x, y in
                        zip(tri.act_right(nm, mu3b), tri.act_left(d3b, m)))
            base = tuple(field.sub(x, y) for x, y in
                         zip(tri.act_right(nm, mu3_one), tri.act_left(d3_one, m)))
            rhs = tri.act_right(base, b)
            if lhs != rhs:
                raise TheoremViolation("condition (iv) fails on a basis pair")
    # (v) on the quadratic span of M
    def check_v(mvec):
        lhs = tri.act_left(cb.delta2.apply(mvec), mvec)
        rhs = tri.act_right(blocks.nu.apply(mvec), cb.mu2.apply(mvec))
        if lhs != rhs:
            raise TheoremViolation("condition (v) fails on the quadratic span")

    for j in range(dm):
        check_v(_unit_m(field, dm, j))
    for j in range(dm):
        for k in range(j + 1, dm):
            m = [field.zero] * dm
            m[j] = field.one
            m[k] = field.one
            check_v(tuple(m))
    if field.characteristic == 2:
        report.notes.append("condition (v) verified on quadratic span only (char 2)")
    # (vi)
    for j in range(dm):
        m = _unit_m(field, dm, j)
        nm = blocks.nu.apply(m)
        lhs = mblock(m)
        rhs = tuple(field.sub(x, y) for x, y in
                    zip(tri.act_right(nm, mu3_one), tri.act_left(d3_one, m)))
        if lhs != rhs:
            raise TheoremViolation("condition (vi) fails on a basis vector")


@dataclass(frozen=True)
class ProperWitness:
    lam: tuple  # twisted-central element of the total algebra
    omega: LinMap  # twisted-central-valued remainder


@dataclass
class PropernessResult:
    proper: bool
    witness: ProperWitness | None
    violated: str | None
    verdicts: dict

    def to_json(self):
        out = {"proper": self.proper, "verdicts": self.verdicts}
        if self.violated:
            out["violated"] = self.violated
        return out


def properness(tri: TriAlgebra, theta: LinMap, blocks: AutBlocks) -> PropernessResult:
    """Decide whether a twisted commuting map splits as lambda x + Omega(x).

    Three independent verdicts are computed (two center-membership criteria
    and a direct linear solve for the pair); they must agree.
    """
    cb, _ = commuting_blocks(tri, theta, blocks)
    field = tri.field
    alg = tri.total
    z_sigma, eta = sigma_center(tri, blocks, want_eta=True)
    pa = project_subspace(z_sigma, tri.range_a, tri.A.dim)
    pb = project_subspace(z_sigma, tri.range_b, tri.B.dim)
    dm = tri.M.dim_m

    def diag_in_center(j: int) -> bool:
        vec = tri.assemble(cb.delta2.image_of_basis(j), [field.zero] * dm, cb.mu2.image_of_basis(j))
        return z_sigma.contains_vector(vec)

    diag_ok = all(diag_in_center(j) for j in range(dm))
    # criterion on unit images
    d1_one = cb.delta1.apply(tri.A.unit)
    mu1_one = cb.mu1.apply(tri.A.unit)
    crit_iii = pa.contains_vector(d1_one) and pb.contains_vector(mu1_one) and diag_ok
    # criterion on full corner images
    crit_ii = (all(pb.contains_vector(cb.mu1.image_of_basis(j)) for j in range(tri.A.dim))
               and all(pa.contains_vector(cb.delta3.image_of_basis(j)) for j in range(tri.B.dim))
               and diag_ok)
    # direct solve for lambda with Theta - lambda . ( ) twisted-central-valued
    direct = _direct_proper_solve(tri, theta, z_sigma)
    verdicts = {"unit_criterion": crit_iii, "image_criterion": crit_ii,
                "direct_solve": direct is not None}
    if len(set(verdicts.values())) != 1:
        raise TheoremViolation("properness criteria disagree: %r" % (verdicts,))
    if not crit_iii:
        which = []
        if not pa.contains_vector(d1_one):
            which.append("delta1(1) outside pi_A(Z_sigma)")
        if not pb.contains_vector(mu1_one):
            which.append("mu1(1) outside pi_B(Z_sigma)")
        if not diag_ok:
            which.append("diag(delta2, mu2) leaves Z_sigma")
        return PropernessResult(False, None, "; ".join(which), verdicts)
    lam = tri.assemble(
        tuple(field.sub(x, y) for x, y in zip(d1_one, eta.apply(mu1_one))),
        [field.zero] * dm,
        tuple(field.sub(x, y) for x, y in zip(eta.apply_inverse(d1_one), mu1_one)),
    )
    if not z_sigma.contains_vector(lam):
        raise TheoremViolation("constructed lambda is not twisted-central")
    lam_mul = LinMap(field, alg.left_mul_mat(lam), alg.dim, alg.dim)
    omega = theta - lam_mul
    for j in range(alg.dim):
        if not z_sigma.contains_vector(omega.image_of_basis(j)):
            raise TheoremViolation("remainder map is not twisted-central-valued")
    return PropernessResult(True, ProperWitness(lam, omega), None, verdicts)


def _direct_proper_solve(tri: TriAlgebra, theta: LinMap, z_sigma: Subspace) -> tuple | None:
    """Find lambda in the twisted center with Theta(e_j) - lambda e_j in it for all j.

    Membership is imposed through the residual projector whose kernel is
    exactly the center subspace, so the system stays linear in the center
    coordinates of lambda.
    """
    field = tri.field
    alg = tri.total
    zdim = z_sigma.dim
    rows = []
    rhs = []
    comp = _complement_projector(z_sigma)
    for j in range(alg.dim):
        ej = alg.basis_vector(j)
        target = comp.apply(theta.image_of_basis(j))
        gens = [comp.apply(alg.mul_vec(z, ej)) for z in z_sigma.basis]
        for m in range(len(target)):
            rows.append([g[m] for g in gens])
            rhs.append(target[m])
    return solve_linear(Mat(field, rows, zdim), rhs)


def _complement_projector(sub: Subspace) -> Mat:
    """Matrix whose kernel is exactly the subspace: residual after removing
    the pivot-coordinate combination of the RREF basis."""
    field = sub.field
    n = sub.ambient_dim
    ident = Mat.identity(field, n)
    rows = [list(r) for r in ident.rows]
    for p, bas in zip(sub.pivots, sub.basis):
        for k in range(n):
            for i in range(n):
                rows[k][i] = field.sub(rows[k][i],
                                       field.mul(bas[k], ident.rows[p][i]))
    # rows now implement v - sum_j v[pivot_j] basis_j; kernel is the span
    return Mat(field, rows, n)


def properness_sufficiency(tri: TriAlgebra, blocks: AutBlocks) -> TheoremReport:
    """Sufficient conditions for every twisted commuting map to be proper.

    The single-element recovery condition (iii) is searched over corner basis
    vectors and pairwise sums only; a miss is reported as undecided, never as
    a refutation.
    """
    report = TheoremReport("properness of all twisted commuting maps")
    field = tri.field
    z_sigma, _ = sigma_center(tri, blocks, want_eta=False)
    pa = project_subspace(z_sigma, tri.range_a, tri.A.dim)
    pb = project_subspace(z_sigma, tri.range_b, tri.B.dim)
    zfa = sigma_center_direct(tri.A, blocks.f.mat)
    zgb = sigma_center_direct(tri.B, blocks.g.mat)
    comm_a = _commutator_span(tri.A)
    comm_b = _commutator_span(tri.B)
    ok1 = (zfa == pa) or comm_b.dim == tri.B.dim
    report.hypotheses.append(Hypothesis(
        "A_side", "pass" if ok1 else "fail",
        "Z_f(A) == pi_A(Z): %s; [B,B] = B: %s" % (zfa == pa, comm_b.dim == tri.B.dim)))
    ok2 = (zgb == pb) or comm_a.dim == tri.A.dim
    report.hypotheses.append(Hypothesis(
        "B_side", "pass" if ok2 else "fail",
        "Z_g(B) == pi_B(Z): %s; [A,A] = A: %s" % (zgb == pb, comm_a.dim == tri.A.dim)))
    m0 = _search_recovering_element(tri, blocks, z_sigma)
    if m0 is not None:
        report.hypotheses.append(Hypothesis("single_element_recovery", "pass",
                                            "m0 found in the search family"))
        report.witnesses.append({"m0": [field.format(v) for v in m0]})
    else:
        report.hypotheses.append(Hypothesis("single_element_recovery", "undecided",
                                            "not found among basis vectors and pairwise sums"))
        report.notes.append("the search family (basis vectors and pairwise sums) is incomplete")
    report.verdict = "all hypotheses pass" if report.all_pass() else "hypotheses incomplete"
    return report


def _commutator_span(alg: FinAlgebra) -> Subspace:
    vecs = [alg.commutator(alg.basis_vector(i), alg.basis_vector(j))
            for i in range(alg.dim) for j in range(i + 1, alg.dim)]
    return Subspace.from_vectors(alg.field, alg.dim, vecs)


def _search_recovering_element(tri: TriAlgebra, blocks: AutBlocks, z_sigma: Subspace):
    field = tri.field
    dm = tri.M.dim_m
    candidates = [_unit_m(field, dm, j) for j in range(dm)]
    for j in range(dm):
        for k in range(j + 1, dm):
            m = [field.zero] * dm
            m[j] = field.one
            m[k] = field.one
            candidates.append(m)
    for m0 in candidates:
        if _condition_set(tri, blocks, m0) == z_sigma:
            return tuple(m0)
    return None


def _condition_set(tri: TriAlgebra, blocks: AutBlocks, m0) -> Subspace:
    """Diagonal pairs with a m0 = nu(m0) b, as a subspace of the total algebra."""
    from .exactla import kernel_sparse

    field = tri.field
    zero = field.zero
    da, dm, db = tri.A.dim, tri.M.dim_m, tri.B.dim
    nu_m0 = blocks.nu.apply(m0)
    rows = []
    for mp in range(dm):
        d = {}
        for i in range(da):
            acc = zero
            for j, c in enumerate(m0):
                if c != zero:
                    acc = field.add(acc, field.mul(c, tri.M.left[i][j][mp]))
            if acc != zero:
                d[i] = acc
        for k in range(db):
            acc = zero
            for t, c in enumerate(nu_m0):
                if c != zero:
                    acc = field.add(acc, field.mul(c, tri.M.right[t][k][mp]))
            if acc != zero:
                d[da + k] = field.sub(d.get(da + k, zero), acc)
        if d:
            rows.append(d)
    pairs = kernel_sparse(field, rows, da + db)
    vecs = [tri.assemble(v[:da], [zero] * dm, v[da:]) for v in pairs.basis]
    return Subspace.from_vectors(field, tri.dim, vecs)


# ---------------------------------------------------------------------------
# corner-preserving endomorphisms: blocks, mono/epi, ideal splitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndoBlocks:
    chi1: LinMap  # A -> A
    chi2: LinMap  # A -> M
    chi3: LinMap  # A -> B
    gamma1: LinMap  # B -> B
    gamma2: LinMap  # B -> M
    gamma3: LinMap  # B -> A
    h: LinMap  # M -> M

    def reassemble(self, tri: TriAlgebra) -> LinMap:
        images = []
        for j in range(tri.A.dim):
            images.append(tri.assemble(self.chi1.image_of_basis(j),
                                       self.chi2.image_of_basis(j),
                                       self.chi3.image_of_basis(j)))
        for j in range(tri.M.dim_m):
            za = [tri.field.zero] * tri.A.dim
            zb = [tri.field.zero] * tri.B.dim
            images.append(tri.assemble(za, self.h.image_of_basis(j), zb))
        for j in range(tri.B.dim):
            images.append(tri.assemble(self.gamma3.image_of_basis(j),
                                       self.gamma2.image_of_basis(j),
                                       self.gamma1.image_of_basis(j)))
        return LinMap.from_images(tri.field, images, tri.dim, tri.dim)


def endo_blocks(tri: TriAlgebra, phi: LinMap) -> tuple[EndoBlocks, TheoremReport]:
    """Seven-block decomposition of a unital endomorphism of the total algebra.

    The corner-structure identities are asserted (raised as findings on
    failure) when the endomorphism maps M onto M, which is the hypothesis
    under which they are guaranteed; with M mapped strictly into itself they
    are evaluated and reported only.
    """
    v = is_endomorphism(tri.total, phi)
    if not v.holds:
        raise NotEndomorphism(str(v.witness.indices if v.witness else ""))
    field = tri.field
    eb = EndoBlocks(
        chi1=LinMap.from_images(field, [tri.part_a(phi.image_of_basis(j)) for j in tri.range_a],
                                tri.A.dim, tri.A.dim),
        chi2=LinMap.from_images(field, [tri.part_m(phi.image_of_basis(j)) for j in tri.range_a],
                                tri.A.dim, tri.M.dim_m),
        chi3=LinMap.from_images(field, [tri.part_b(phi.image_of_basis(j)) for j in tri.range_a],
                                tri.A.dim, tri.B.dim),
        gamma1=LinMap.from_images(field, [tri.part_b(phi.image_of_basis(j)) for j in tri.range_b],
                                  tri.B.dim, tri.B.dim),
        gamma2=LinMap.from_images(field, [tri.part_m(phi.image_of_basis(j)) for j in tri.range_b],
                                  tri.B.dim, tri.M.dim_m),
        gamma3=LinMap.from_images(field, [tri.part_a(phi.image_of_basis(j)) for j in tri.range_b],
                                  tri.B.dim, tri.A.dim),
        h=LinMap.from_images(field, [tri.part_m(phi.image_of_basis(j)) for j in tri.range_m],
                             tri.M.dim_m, tri.M.dim_m),
    )
    report = TheoremReport("block structure of corner-preserving endomorphisms")
    m_into = all(
        all(c == field.zero for c in tri.part_a(phi.image_of_basis(j)))
        and all(c == field.zero for c in tri.part_b(phi.image_of_basis(j)))
        for j in tri.range_m
    )
    m_onto = m_into and eb.h.rank() == tri.M.dim_m
    report.hypotheses.append(Hypothesis("maps_M_into_M", "pass" if m_into else "fail"))
    report.hypotheses.append(Hypothesis("maps_M_onto_M", "pass" if m_onto else "fail"))
    if m_into and eb.reassemble(tri).mat != phi.mat:
        raise TheoremViolation("block reassembly does not reproduce the endomorphism")
    if m_into:
        _thm0_conditions(tri, eb, report, assert_strict=m_onto)
        if eb.h.is_bijective():
            _thm1_conditions(tri, eb, report)
        anti = eb.chi1.is_zero() and eb.gamma1.is_zero()
        if anti:
            report.notes.append("anti-partible shape: both diagonal corner blocks vanish")
        report.verdict = "anti-partible" if anti else "corner-preserving blocks verified"
    else:
        report.verdict = "not corner-preserving; extraction only"
    return eb, report


def _thm0_conditions(tri: TriAlgebra, eb: EndoBlocks, report: TheoremReport, assert_strict: bool):
    A, B = tri.A, tri.B

    def fail(msg: str):
        if assert_strict:
            raise TheoremViolation(msg)
        report.violations.append(msg)

    for name, alg, f in (("chi1", A, eb.chi1), ("gamma3", B, eb.gamma3),
                         ("chi3", A, eb.chi3), ("gamma1", B, eb.gamma1)):
        target = A if name in ("chi1", "gamma3") else B
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = f.apply(alg.mul[i][j])
                rhs = target.mul_vec(f.image_of_basis(i), f.image_of_basis(j))
                if lhs != rhs:
                    fail("%s is not multiplicative" % name)
                    break
            else:
                continue
            break
    im_chi1, im_gamma3 = eb.chi1.image(), eb.gamma3.image()
    im_chi3, im_gamma1 = eb.chi3.image(), eb.gamma1.image()
    if not subspace_product(A, im_chi1, im_gamma3).is_zero() or \
            not subspace_product(A, im_gamma3, im_chi1).is_zero():
        fail("images of chi1 and gamma3 do not annihilate each other")
    if not subspace_product(B, im_chi3, im_gamma1).is_zero() or \
            not subspace_product(B, im_gamma1, im_chi3).is_zero():
        fail("images of chi3 and gamma1 do not annihilate each other")
    if not (is_ideal(A, im_chi1) and is_ideal(A, im_gamma3)):
        fail("corner images are not ideals of A")
    if not (is_ideal(B, im_chi3) and is_ideal(B, im_gamma1)):
        fail("corner images are not ideals of B")
    if not (im_chi1.sum(im_gamma3).dim == A.dim and im_chi1.intersect(im_gamma3).is_zero()):
        fail("A is not the direct sum of the two corner images")
    if not (im_chi3.sum(im_gamma1).dim == B.dim and im_chi3.intersect(im_gamma1).is_zero()):
        fail("B is not the direct sum of the two corner images")
    report.notes.append("corner-image direct sums evaluated")


def _thm1_conditions(tri: TriAlgebra, eb: EndoBlocks, report: TheoremReport):
    from .algcore import annihilators

    ann = annihilators(tri)
    A, B = tri.A, tri.B

    def fail(msg):
        raise TheoremViolation(msg)

    if not ann.L.contains(eb.gamma3.image()):
        fail("image of gamma3 leaves the left annihilator of M")
    if not ann.R.contains(eb.chi3.image()):
        fail("image of chi3 leaves the right annihilator of M")
    if not ann.L.contains(eb.chi1.kernel()):
        fail("kernel of chi1 leaves the left annihilator of M")
    if not ann.R.contains(eb.gamma1.kernel()):
        fail("kernel of gamma1 leaves the right annihilator of M")
    chi2_one = eb.chi2.apply(A.unit)
    for i in range(A.dim):
        got = eb.chi2.image_of_basis(i)
        want = tri.act_left(eb.chi1.image_of_basis(i), chi2_one)
        if got != want:
            fail("chi2 is not chi1-scaled from its unit value")
        for j in range(A.dim):
            lhs = eb.chi2.apply(A.mul[i][j])
            rhs = tri.act_left(eb.chi1.image_of_basis(i), eb.chi2.image_of_basis(j))
            if lhs != rhs:
                fail("chi2 fails its product rule")
    gamma2_one = eb.gamma2.apply(B.unit)
    for i in range(B.dim):
        got = eb.gamma2.image_of_basis(i)
        want = tri.act_right(gamma2_one, eb.gamma1.image_of_basis(i))
        if got != want:
            fail("gamma2 is not gamma1-scaled from its unit value")
        for j in range(B.dim):
            lhs = eb.gamma2.apply(B.mul[i][j])
            rhs = tri.act_right(eb.gamma2.image_of_basis(i), eb.gamma1.image_of_basis(j))
            if lhs != rhs:
                fail("gamma2 fails its product rule")
    if not eb.chi2.kernel().contains(eb.chi1.kernel()):
        fail("kernel of chi1 is not inside kernel of chi2")
    if not eb.gamma2.kernel().contains(eb.gamma1.kernel()):
        fail("kernel of gamma1 is not inside kernel of gamma2")
    report.notes.append("bijective-h block identities verified")


@dataclass
class MonoEpiReport:
    mono_criteria: dict
    epi_criteria: dict
    mono: bool
    epi: bool
    rank: int
    injective: bool
    surjective: bool
    consistent: bool

    def to_json(self):
        return {
            "mono_criteria": self.mono_criteria,
            "epi_criteria": self.epi_criteria,
            "mono": self.mono,
            "epi": self.epi,
            "rank": self.rank,
            "injective": self.injective,
            "surjective": self.surjective,
            "consistent": self.consistent,
        }


def _image_of_subspace(f: LinMap, sub: Subspace, dst_dim: int) -> Subspace:
    return Subspace.from_vectors(f.field, dst_dim, [f.apply(v) for v in sub.basis])


def endo_mono_epi(tri: TriAlgebra, eb: EndoBlocks, phi: LinMap) -> MonoEpiReport:
    """Kernel/image criteria for injectivity and surjectivity, cross-checked
    against the rank of the full matrix.

    Both the literal intersection reading and the sum reading of the
    surjectivity image conditions are evaluated; the sum reading feeds the
    verdict, the rank check is ground truth.  A disagreement under the
    onto-M hypothesis is a finding.
    """
    m_into = eb.reassemble(tri).mat == phi.mat
    if not m_into:
        raise NotMPreserving("mono/epi criteria need phi(M) inside M")
    A, B = tri.A, tri.B
    m1 = eb.h.kernel().is_zero()
    m2 = eb.chi1.kernel().intersect(eb.chi3.kernel()).is_zero()
    m3 = eb.gamma1.kernel().intersect(eb.gamma3.kernel()).is_zero()
    mono = m1 and m2 and m3
    e1 = eb.h.rank() == tri.M.dim_m
    chi1_ker3 = _image_of_subspace(eb.chi1, eb.chi3.kernel(), A.dim)
    gamma3_ker1 = _image_of_subspace(eb.gamma3, eb.gamma1.kernel(), A.dim)
    gamma1_ker3 = _image_of_subspace(eb.gamma1, eb.gamma3.kernel(), B.dim)
    chi3_ker1 = _image_of_subspace(eb.chi3, eb.chi1.kernel(), B.dim)
    e2_sum = chi1_ker3.sum(gamma3_ker1).dim == A.dim
    e3_sum = gamma1_ker3.sum(chi3_ker1).dim == B.dim
    e2_lit = chi1_ker3.intersect(gamma3_ker1).dim == A.dim
    e3_lit = gamma1_ker3.intersect(chi3_ker1).dim == B.dim
    epi = e1 and e2_sum and e3_sum
    rank = phi.rank()
    injective = rank == tri.dim
    surjective = rank == tri.dim
    consistent = (mono == injective) and (epi == surjective)
    report = MonoEpiReport(
        {"kernel_h": m1, "kernel_chi": m2, "kernel_gamma": m3},
        {"h_onto": e1, "A_sum": e2_sum, "B_sum": e3_sum,
         "A_intersection_literal": e2_lit, "B_intersection_literal": e3_lit},
        mono, epi, rank, injective, surjective, consistent,
    )
    if not consistent and eb.h.rank() == tri.M.dim_m:
        raise TheoremViolation("mono/epi criteria disagree with the rank check: %r"
                               % report.to_json())
    return report


@dataclass
class IdealSplit:
    ideal_i: Subspace
    ideal_j: Subspace
    tri_i: TriAlgebra | None
    tri_j: TriAlgebra | None
    phi_i: LinMap | None
    phi_j: LinMap | None
    witness_i: "PartibleWitness | None"
    anti_partible_j: bool


def ideal_split(tri: TriAlgebra, phi: LinMap) -> IdealSplit:
    """Split T into invariant ideals I (triangular, restriction partible) and
    J (diagonal, restriction anti-partible) from the corner-block kernels."""
    v = is_automorphism(tri.total, phi)
    if not v.holds:
        raise NotAutomorphism("ideal splitting needs an automorphism")
    eb, _ = endo_blocks(tri, phi)
    if eb.reassemble(tri).mat != phi.mat:
        raise NotMPreserving("ideal splitting needs phi(M) = M")
    field = tri.field
    t = tri.total
    ker_chi3 = eb.chi3.kernel()
    ker_gamma3 = eb.gamma3.kernel()
    ker_chi1 = eb.chi1.kernel()
    ker_gamma1 = eb.gamma1.kernel()
    i_vecs = [tri.embed_a(v_) for v_ in ker_chi3.basis]
    i_vecs += [t.basis_vector(i) for i in tri.range_m]
    i_vecs += [tri.embed_b(v_) for v_ in ker_gamma3.basis]
    j_vecs = [tri.embed_a(v_) for v_ in ker_chi1.basis]
    j_vecs += [tri.embed_b(v_) for v_ in ker_gamma1.basis]
    sub_i = Subspace.from_vectors(field, tri.dim, i_vecs)
    sub_j = Subspace.from_vectors(field, tri.dim, j_vecs)
    if not is_ideal(t, sub_i) or not is_ideal(t, sub_j):
        raise TheoremViolation("corner-kernel blocks are not ideals")
    if sub_i.sum(sub_j).dim != tri.dim or not sub_i.intersect(sub_j).is_zero():
        raise TheoremViolation("the two ideals do not decompose the algebra")
    for basis, sub in ((sub_i.basis, sub_i), (sub_j.basis, sub_j)):
        img = Subspace.from_vectors(field, tri.dim, [phi.apply(v_) for v_ in basis])
        if img != sub:
            raise TheoremViolation("ideal is not invariant under the automorphism")
    tri_i, phi_i = _sub_triangular(tri, ker_chi3, ker_gamma3, True, phi)
    tri_j, phi_j = _sub_triangular(tri, ker_chi1, ker_gamma1, False, phi)
    witness_i = None
    if tri_i is not None and phi_i is not None:
        witness_i = partible_witness(tri_i, phi_i)
        if witness_i is None:
            raise TheoremViolation("restriction to the triangular ideal is not partible "
                                   "within the witness family")
    anti = True
    if tri_j is not None and phi_j is not None:
        ebj, _ = endo_blocks(tri_j, phi_j)
        anti = ebj.chi1.is_zero() and ebj.gamma1.is_zero()
        if not anti:
            raise TheoremViolation("restriction to the diagonal ideal is not anti-partible")
    return IdealSplit(sub_i, sub_j, tri_i, tri_j, phi_i, phi_j, witness_i, anti)


def _sub_triangular(tri: TriAlgebra, sub_a: Subspace, sub_b: Subspace, include_m: bool,
                    phi: LinMap):
    """Build Trian(sub_a, M or 0, sub_b) and restrict phi to it.

    Returns (None, None) for the zero ideal.
    """
    field = tri.field
    t = tri.total
    dm = tri.M.dim_m if include_m else 0
    if sub_a.dim == 0 and sub_b.dim == 0 and dm == 0:
        return None, None
    ordered = [tri.embed_a(v) for v in sub_a.basis]
    ordered += [t.basis_vector(i) for i in tri.range_m] if include_m else []
    ordered += [tri.embed_b(v) for v in sub_b.basis]
    basis_mat = Mat(field, list(zip(*ordered)) if ordered else [], len(ordered))

    def coords(vec) -> tuple:
        c = solve_linear(basis_mat, vec)
        if c is None:
            raise TheoremViolation("vector leaves the invariant ideal")
        return c

    # the unit of the ideal: component of 1 in this ideal within the I + J split
    unit_coords = _ideal_unit(tri, ordered, coords)
    # corner algebra on sub_a
    a_basis = [tri.embed_a(v) for v in sub_a.basis]
    a_mat = Mat(field, list(zip(*[tuple(tri.part_a(v)) for v in a_basis])) if a_basis else [],
                len(a_basis))

    def a_coords(avec):
        c = solve_linear(a_mat, avec)
        if c is None:
            raise TheoremViolation("corner product leaves the corner ideal")
        return c

    mul_a = [[a_coords(tri.A.mul_vec(sub_a.basis[i], sub_a.basis[j]))
              for j in range(sub_a.dim)] for i in range(sub_a.dim)]
    unit_a = list(unit_coords[: sub_a.dim])
    alg_a = validate_algebra(field, mul_a, unit_a,
                             ["a%d" % i for i in range(sub_a.dim)]) if sub_a.dim else \
        validate_algebra(field, [], [], [])
    b_basis = [tri.embed_b(v) for v in sub_b.basis]
    b_mat = Mat(field, list(zip(*[tuple(tri.part_b(v)) for v in b_basis])) if b_basis else [],
                len(b_basis))

    def b_coords(bvec):
        c = solve_linear(b_mat, bvec)
        if c is None:
            raise TheoremViolation("corner product leaves the corner ideal")
        return c

    mul_b = [[b_coords(tri.B.mul_vec(sub_b.basis[i], sub_b.basis[j]))
              for j in range(sub_b.dim)] for i in range(sub_b.dim)]
    unit_b = list(unit_coords[sub_a.dim + dm:])
    alg_b = validate_algebra(field, mul_b, unit_b,
                             ["b%d" % i for i in range(sub_b.dim)]) if sub_b.dim else \
        validate_algebra(field, [], [], [])
    if include_m:
        left = [[tri.act_left(sub_a.basis[i], _unit_m(field, dm, j)) for j in range(dm)]
                for i in range(sub_a.dim)]
        right = [[tri.act_right(_unit_m(field, dm, j), sub_b.basis[k]) for k in range(sub_b.dim)]
                 for j in range(dm)]
        bm = Bimodule(field, sub_a.dim, dm, sub_b.dim, left, right)
    else:
        bm = Bimodule.zero(field, sub_a.dim, sub_b.dim)
    sub_tri = build_triangular(alg_a, bm, alg_b, allow_zero_m=True)
    images = [coords(phi.apply(v)) for v in ordered]
    phi_sub = LinMap.from_images(field, images, len(ordered), len(ordered))
    return sub_tri, phi_sub


def _ideal_unit(tri: TriAlgebra, ordered, coords) -> tuple:
    """Coordinates (in the ordered ideal basis) of the unit component in it."""
    t = tri.total
    field = tri.field
    if not ordered:
        return ()
    # 1 * v = v for v in the ideal; the component of 1 inside the ideal is the
    # unique idempotent acting as the identity there: solve sum_c c_i (v_i v_j) = v_j
    rows = []
    rhs = []
    for j, vj in enumerate(ordered):
        prods = [t.mul_vec(vi, vj) for vi in ordered]
        for m in range(tri.dim):
            rows.append([pr[m] for pr in prods])
            rhs.append(vj[m])
    sol = solve_linear(Mat(field, rows, len(ordered)), rhs)
    if sol is None:
        raise TheoremViolation("invariant ideal has no unit")
    return sol


# ---------------------------------------------------------------------------
# partibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartibleWitness:
    z: tuple  # invertible element with sigma = conj_z . sigma_bar
    sigma_bar: LinMap
    blocks: AutBlocks


def partible_witness(tri: TriAlgebra, sigma: LinMap) -> PartibleWitness | None:
    """Factor sigma as an inner automorphism after a block-preserving one.

    The witness family is z = 1 + corner-part of sigma(p); it covers every
    automorphism that preserves M.  A miss returns None (unknown), never a
    negative certificate.
    """
    v = is_automorphism(tri.total, sigma)
    if not v.holds:
        raise NotAutomorphism("partibility witnesses need an automorphism")
    t = tri.total
    field = tri.field
    try:
        blocks = block_decompose(tri, sigma)
        return PartibleWitness(t.unit, sigma, blocks)
    except NotBlockPreserving:
        pass
    e = sigma.apply(tri.p)
    if tuple(tri.part_a(e)) != tuple(tri.A.unit):
        return None
    if any(c != field.zero for c in tri.part_b(e)):
        return None
    z = t.add_vec(t.unit, tri.embed_m(tri.part_m(e)))
    z_inv = t.invert(z)
    images = [t.mul_vec(t.mul_vec(z, sigma.image_of_basis(j)), z_inv) for j in range(tri.dim)]
    sigma_bar = LinMap.from_images(field, images, tri.dim, tri.dim)
    try:
        blocks = block_decompose(tri, sigma_bar)
    except NotBlockPreserving:
        return None
    # verify sigma = conj_z . sigma_bar exactly
    recomposed = [t.mul_vec(t.mul_vec(z_inv, sigma_bar.image_of_basis(j)), z)
                  for j in range(tri.dim)]
    if LinMap.from_images(field, recomposed, tri.dim, tri.dim).mat != sigma.mat:
        raise TheoremViolation("witness recomposition does not reproduce sigma")
    return PartibleWitness(z, sigma_bar, blocks)


def partibility_sufficient(tri: TriAlgebra, budget: int | None = None) -> TheoremReport:
    """Certificates that force every automorphism to be partible: an
    idempotent-symmetry corner or a semiprimitive corner.  Never claims
    non-partibility."""
    report = TheoremReport("partibility of the triangular algebra")
    cond_a = structure_checks(tri.A, "condition_I", budget)
    cond_b = structure_checks(tri.B, "condition_I", budget)
    report.hypotheses.append(Hypothesis("condition_I_A", _as_verdict(cond_a.verdict),
                                        "method: %s" % cond_a.method))
    report.hypotheses.append(Hypothesis("condition_I_B", _as_verdict(cond_b.verdict),
                                        "method: %s" % cond_b.method))
    nil_a = nil_b = None
    try:
        nil_a = radical(tri.A).is_zero()
    except CharTooSmall:
        pass
    try:
        nil_b = radical(tri.B).is_zero()
    except CharTooSmall:
        pass
    report.hypotheses.append(Hypothesis(
        "nil_radical_A_zero",
        "pass" if nil_a else ("undecided" if nil_a is None else "fail")))
    report.hypotheses.append(Hypothesis(
        "nil_radical_B_zero",
        "pass" if nil_b else ("undecided" if nil_b is None else "fail")))
    certs = []
    if cond_a.verdict == "holds":
        certs.append("A satisfies the idempotent condition")
    if cond_b.verdict == "holds":
        certs.append("B satisfies the idempotent condition")
    if nil_a:
        certs.append("A has zero nil radical")
    if nil_b:
        certs.append("B has zero nil radical")
    if certs:
        report.verdict = "partible"
        report.witnesses.extend(certs)
        if (nil_a or nil_b) and bool(nil_a) != bool(nil_b):
            # the semiprimitivity certificate is stated one-sided; the
            # alternative argument via the corner nil radical needs both
            # sides, so record which reading is in force
            report.notes.append(
                "nil-radical certificate applied one-sided (only one corner "
                "is semiprimitive); the two-sided variant does not apply")
    else:
        report.verdict = "undecided"
        report.notes.append("no sufficient certificate found; partibility is not refuted")
    return report


def _as_verdict(v: str) -> str:
    return {"holds": "pass", "fails": "fail"}.get(v, "undecided")


# ---------------------------------------------------------------------------
# commuting automorphisms
# ---------------------------------------------------------------------------


@dataclass
class CommutingAutoResult:
    is_identity: bool
    commuting: bool
    witness: dict | None


def commuting_auto_check(tri: TriAlgebra, sigma: LinMap) -> CommutingAutoResult:
    """A commuting automorphism of a faithful triangular algebra must be the
    identity; otherwise the non-commuting witness pair is returned."""
    v = is_automorphism(tri.total, sigma)
    if not v.holds:
        raise NotAutomorphism("commuting check needs an automorphism")
    if not tri.is_faithful():
        raise NotFaithful("commuting-automorphism rigidity needs a faithful bimodule")
    verdict = classify_linear("commuting", tri.total, sigma)
    if verdict.holds:
        if not sigma.is_identity():
            raise TheoremViolation("commuting automorphism differs from the identity")
        return CommutingAutoResult(True, True, None)
    w = verdict.witness
    return CommutingAutoResult(False, False, w.to_json(tri.field) if w else None)
