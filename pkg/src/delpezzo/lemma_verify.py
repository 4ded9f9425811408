"""Exhaustive scans over one-dimensional candidate non-integrable loci.

Setting: Z = sum(mu_i * C_i) + Omega is an effective member of |-mK| whose
non-integrability locus at threshold lam contains the curves C_i, so each
coefficient satisfies mu_i >= m/lam.  The anticanonical degree budget
3m = Z.(-K) then caps the possible configurations to a handful of shapes,
and every one of them dies on exact lattice arithmetic.  The scans below
enumerate all shapes at a concrete level m and record one contradiction per
candidate (or a survivor, which the nodal model has for even m).

Candidate evaluation is pure and the verdict sorts its records canonically,
so accumulation order never matters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .germs import parse_germ
from .lattice import (C, MINUS_K, DivisorClass, SurfaceModel,
                      enumerate_negative_curves, is_ample, is_effective)
from .lct import blowup_lct
from .plane_config import SixPointConfig, eckardt_points

#: Contradiction vocabulary.  Every reason is re-checkable from the recorded
#: candidate alone: ampleness via is_ample, effectivity via is_effective, the
#: counting reasons by redoing the displayed intersection arithmetic.
NOT_AMPLE = "not-ample"
RESIDUAL_NOT_EFFECTIVE = "residual-not-effective"
INTERSECTION_VIOLATION = "intersection-violation"
DEGREE_OVERFLOW = "degree-overflow"
PROJECTION_DEGREE = "projection-degree"
NEIGHBOR_COUNTING = "neighbor-counting"
HALF_INTEGRAL = "half-integral"


@dataclass(frozen=True)
class Decomposition:
    """Z = sum(mu_i * C_i) + Omega split along a candidate locus.

    parts lists (label, class, mu) for the locus curves; residual is the
    lattice class Omega = -mK - sum(mu_i * C_i), so the defining identity
    holds by construction.  residual_support optionally names an explicit
    effective decomposition of Omega when the scan derives one.
    """

    m: int
    lam: Fraction
    parts: tuple[tuple[str, DivisorClass, int], ...]
    residual: DivisorClass
    residual_support: Optional[tuple[tuple[str, Fraction], ...]] = None

    @property
    def coefficients(self) -> dict[str, int]:
        return {lab: mu for lab, _, mu in self.parts}

    def locus_class(self) -> DivisorClass:
        total = DivisorClass(0, (0,) * 6)
        for _, cls, mu in self.parts:
            total = total + mu * cls
        return total

    def residual_is_effective(self, model: SurfaceModel) -> bool:
        return is_effective(self.residual, model)

    def __str__(self):
        body = " + ".join(f"{mu}*{lab}" for lab, _, mu in self.parts)
        if self.residual_support:
            omega = " + ".join(f"{k}*{lab}" for lab, k in self.residual_support)
            return f"{body} + {omega}"
        return f"{body} + Omega{self.residual}"


def decomposition(m: int, lam, parts) -> Decomposition:
    """Build a Decomposition, computing the residual from the lattice identity."""
    m = int(m)
    lam = Fraction(lam)
    norm = []
    for lab, cls, mu in parts:
        mu = int(mu)
        if mu < 0:
            raise ValueError("locus coefficients must be non-negative")
        norm.append((str(lab), cls, mu))
    residual = m * MINUS_K
    for _, cls, mu in norm:
        residual = residual - mu * cls
    return Decomposition(m=m, lam=lam, parts=tuple(norm), residual=residual)


def degree_budget_check(candidate: Decomposition) -> bool:
    """Anticanonical degrees balance: sum(mu_i*deg C_i) + deg Omega = 3m, deg Omega >= 0."""
    omega_deg = candidate.residual.degree()
    total = sum(mu * cls.degree() for _, cls, mu in candidate.parts) + omega_deg
    return omega_deg >= 0 and total == 3 * candidate.m


@dataclass(frozen=True)
class ScanRecord:
    """One examined candidate with its contradiction (reason None = survivor)."""

    candidate: Decomposition
    reason: Optional[str]
    detail: str = ""

    @property
    def survived(self) -> bool:
        return self.reason is None

    def line(self) -> str:
        verdict = "SURVIVOR" if self.survived else self.reason
        tail = f" -- {self.detail}" if self.detail else ""
        return f"{self.candidate}: {verdict}{tail}"


@dataclass(frozen=True)
class CaseVerdict:
    label: str
    records: tuple[ScanRecord, ...]

    @property
    def survivors(self) -> tuple[ScanRecord, ...]:
        return tuple(r for r in self.records if r.survived)

    def counts_by_reason(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in self.records:
            key = "survivor" if r.survived else r.reason
            counts[key] = counts.get(key, 0) + 1
        return counts

    def report(self) -> str:
        lines = [self.label,
                 f"{len(self.records)} candidates, {len(self.survivors)} survivors"]
        lines += ["  " + r.line() for r in self.records]
        return "\n".join(lines)


def _verdict(label: str, records) -> CaseVerdict:
    # Canonical order: by locus labels, then coefficients.  Makes the verdict
    # independent of enumeration order.
    key = lambda r: (tuple(lab for lab, _, _ in r.candidate.parts),
                     tuple(mu for _, _, mu in r.candidate.parts))
    return CaseVerdict(label=label, records=tuple(sorted(records, key=key)))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# -- smooth model -------------------------------------------------------------

def _conic_classes(lines: dict[str, DivisorClass]) -> dict[str, DivisorClass]:
    """The 27 classes -K - L: square 0, anticanonical degree 2.

    These are the lattice proxies for irreducible degree-2 curves (conic
    pencil members), completing the line classes as candidate locus
    components of degree <= 2.
    """
    conics = {f"-K-{lab}": MINUS_K - cls for lab, cls in lines.items()}
    assert all(c.square() == 0 and c.degree() == 2 for c in conics.values())
    return conics


def classify_smooth_candidate(cand: Decomposition) -> ScanRecord:
    """Evaluate one smooth-model candidate against the case analysis.

    Checks, in order: the degree budget; for budget-exhausting loci (two
    lines, or one conic class) the ampleness of the locus class, which would
    have to equal the ample -mK; for a single line the degree-2 projection
    bound 2*mu <= 3m and then the 10-neighbour count against what the
    residual intersection number affords.
    """
    m, lam = cand.m, cand.lam
    floor = Fraction(m) / lam
    if any(mu < floor for _, _, mu in cand.parts):
        raise ValueError(f"locus coefficients must be >= m/lam = {floor}")
    budget = 3 * m
    spent = sum(mu * cls.degree() for _, cls, mu in cand.parts)
    if spent > budget:
        return ScanRecord(cand, DEGREE_OVERFLOW,
                          f"locus degree {spent} exceeds the budget Z.(-K) = {budget}")

    if len(cand.parts) == 2 or cand.parts[0][1].degree() == 2:
        # Budget is exhausted exactly (coefficients >= 3m/2, degrees sum to 2),
        # so the residual is empty and the locus class must be -mK itself.
        assert spent == budget and cand.residual.degree() == 0
        z = cand.locus_class()
        if not is_ample(z):
            shape = " + ".join(lab for lab, _, _ in cand.parts)
            return ScanRecord(cand, NOT_AMPLE,
                              f"empty residual forces Z = -{m}K, ample; but "
                              f"({shape}) scaled has square {z.square()} and "
                              f"fails Nakai-Moishezon")
        if cand.residual != DivisorClass(0, (0,) * 6):
            return ScanRecord(cand, RESIDUAL_NOT_EFFECTIVE,
                              "degree-0 residual is a nonzero class")
        return ScanRecord(cand, None, "locus class is ample")

    (lab, cls, mu), = cand.parts
    if 2 * mu > budget:
        return ScanRecord(cand, PROJECTION_DEGREE,
                          f"the line maps to a conic under a degree-2 blow-down, "
                          f"so 2*mu <= 3m; here 2*{mu} > {budget}")
    # 2*mu = 3m exactly.  Every line meeting C1 must sit in the residual with
    # coefficient >= m/2 (from m = L.Z >= mu - kappa_L), but C1.Omega = m + mu
    # affords only (m + mu)/(m/2) of them.
    smooth = enumerate_negative_curves(SurfaceModel.SMOOTH)
    neighbors = sorted(o for o, d in smooth.items() if o != lab and cls.intersect(d) > 0)
    afford = Fraction(m + mu, 1) / Fraction(m, 2)
    if len(neighbors) > afford:
        return ScanRecord(cand, NEIGHBOR_COUNTING,
                          f"{len(neighbors)} neighbouring lines each need "
                          f"coefficient >= {Fraction(m, 2)} in the residual, "
                          f"but C1.Omega = {m + mu} affords at most {afford}")
    return ScanRecord(cand, None, "neighbour count affordable")


def lemma31_scan(m: int, lam) -> CaseVerdict:
    """Rule out one-dimensional non-integrable loci on the smooth cubic.

    Enumerates every candidate locus with integer coefficients mu_i >=
    ceil(m/lam) fitting the degree budget 3m.  The coefficient floor (>= 3m/2
    for lam <= 2/3) caps the locus at total degree 2, so the shapes are: a
    connected pair of lines, a single conic class, or a single line.
    Disconnected pairs are excluded outright: the locus is connected.
    Budget-infeasible shapes (anything involving a conic in a pair, and all
    larger supports) admit no coefficients at all and are not candidates.
    """
    m = int(m)
    if m < 2:
        raise ValueError("m >= 2 required")
    lam = Fraction(lam)
    if not 0 < lam <= Fraction(2, 3):
        raise ValueError("threshold lam must lie in (0, 2/3]")

    q = _ceil(Fraction(m) / lam)
    budget = 3 * m
    assert budget // q <= 2  # the floor alone caps the support size

    lines = enumerate_negative_curves(SurfaceModel.SMOOTH)
    pool = {lab: cls for lab, cls in lines.items()}
    pool.update(_conic_classes(lines))

    records = []
    for lab, cls in pool.items():
        deg = cls.degree()
        if deg * q > budget:
            continue
        for mu in range(q, budget // deg + 1):
            records.append(classify_smooth_candidate(
                decomposition(m, lam, [(lab, cls, mu)])))
    for (la, ca), (lb, cb) in itertools.combinations(pool.items(), 2):
        if ca.intersect(cb) < 1:
            continue  # connectedness
        if q * (ca.degree() + cb.degree()) > budget:
            continue
        for mu1 in range(q, (budget - q * cb.degree()) // ca.degree() + 1):
            rest = budget - mu1 * ca.degree()
            for mu2 in range(q, rest // cb.degree() + 1):
                records.append(classify_smooth_candidate(
                    decomposition(m, lam, [(la, ca, mu1), (lb, cb, mu2)])))
    return _verdict(f"smooth-model locus scan: m={m}, lam={lam}", records)


# -- nodal model --------------------------------------------------------------

def canonical_nodal_survivor(m: int) -> Decomposition:
    """The unique even-m decomposition (3m/2)C + (m/2)(E1+E2+E3+L45+L46+L56)."""
    if m % 2:
        raise ValueError("only even m admits the survivor")
    curves = enumerate_negative_curves(SurfaceModel.NODAL)
    adjacent = sorted(lab for lab, cls in curves.items()
                      if lab != "C" and cls.intersect(C) == 1)
    cand = decomposition(m, Fraction(2, 3), [("C", C, 3 * m // 2)])
    support = tuple((lab, Fraction(m, 2)) for lab in adjacent)
    return Decomposition(cand.m, cand.lam, cand.parts, cand.residual, support)


def lemma51_scan(m: int) -> CaseVerdict:
    """Classify one-dimensional non-integrable loci on the one-node resolution.

    The threshold is 2/3 (coefficient floor ceil(3m/2)) and the curve pool is
    the 21 lines plus the (-2)-curve C.  C has anticanonical degree 0, so it
    joins any locus for free and the budget allows exactly five connected
    shapes: {C}, {C1}, {C, C1}, {C1, C2}, {C, C1, C2} with the C_i lines.
    For even m the shape {C} survives with Z = (3m/2)C + (m/2)(E1+E2+E3+
    L45+L46+L56), verified as an exact lattice identity; everything else
    records a contradiction, and for odd m nothing survives (the forced
    coefficients are half-integral).
    """
    m = int(m)
    if m < 2:
        raise ValueError("m >= 2 required")
    lam = Fraction(2, 3)
    q = _ceil(Fraction(3 * m, 2))
    budget = 3 * m
    curves = enumerate_negative_curves(SurfaceModel.NODAL)
    lines = {lab: cls for lab, cls in curves.items() if lab != "C"}
    adjacent = sorted(lab for lab, cls in lines.items() if cls.intersect(C) == 1)
    assert len(adjacent) == 6

    records = [_scan_node_alone(m, lam, q, lines, adjacent)]
    for lab, cls in lines.items():
        records.append(_scan_single_line(m, lam, q, lines, lab, cls))
    for lab in adjacent:
        records.append(_scan_node_plus_line(m, lam, q, lines, lab))
    for (la, ca), (lb, cb) in itertools.combinations(lines.items(), 2):
        if ca.intersect(cb) >= 1:
            records.append(_scan_line_pair(m, lam, q, lines, (la, ca), (lb, cb)))
        touches = (ca.intersect(C) >= 1, cb.intersect(C) >= 1)
        connected = all(touches) or (any(touches) and ca.intersect(cb) >= 1)
        if connected:
            records.append(_scan_node_plus_pair(m, lam, q, lines, (la, ca), (lb, cb)))
    return _verdict(f"nodal-model locus scan: m={m}, lam={lam}", records)


def _scan_node_alone(m, lam, q, lines, adjacent) -> ScanRecord:
    # Each adjacent line E has m = E.Z = mu - kappa_E + ..., forcing it into
    # the residual with kappa_E >= mu - m; the residual degree 3m then gives
    # 6(mu - m) <= 3m, so mu = 3m/2 exactly and Omega = (m/2) * (sum of six).
    forced = Fraction(3 * m, 2)
    if forced.denominator != 1:
        cand = decomposition(m, lam, [("C", C, q)])
        return ScanRecord(cand, HALF_INTEGRAL,
                          f"the six adjacent lines force the C-coefficient to "
                          f"exactly 3m/2 = {forced}, not an integer")
    mu = int(forced)
    cand = canonical_nodal_survivor(m)
    six = DivisorClass(0, (0,) * 6)
    for lab in adjacent:
        six = six + lines[lab]
    if 2 * cand.residual != m * six:
        return ScanRecord(cand, RESIDUAL_NOT_EFFECTIVE,
                          "equality analysis demands Omega = (m/2)(sum of the "
                          "six adjacent lines), which the lattice refutes")
    if not cand.residual_is_effective(SurfaceModel.NODAL):
        return ScanRecord(cand, RESIDUAL_NOT_EFFECTIVE, "Omega is not effective")
    assert degree_budget_check(cand)
    return ScanRecord(cand, None,
                      f"forced exactly: Z = {mu}*C + {Fraction(m, 2)}*"
                      f"({'+'.join(adjacent)}), an identity in the lattice")


def _scan_single_line(m, lam, q, lines, lab, cls) -> ScanRecord:
    # C1.Omega = m + mu must cover n forced neighbours at mu - m each, plus
    # mu/2 on C when C1 meets C (from 0 = C.Z = mu - 2*kappa_C + ...).  With
    # mu >= 3m/2 the load always exceeds the cover.
    cand = decomposition(m, lam, [(lab, cls, q)])
    n = sum(1 for o, d in lines.items() if o != lab and cls.intersect(d) > 0)
    meets_node = cls.intersect(C)
    # cover >= load reduces to mu*(2n - 2 + meets_node) <= 2m(n + 1); check at
    # the floor, where the left side is smallest.
    lhs = q * (2 * n - 2 + meets_node)
    rhs = 2 * m * (n + 1)
    assert lhs > rhs, "single-line affordability must fail at the floor"
    node_part = f" plus {Fraction(q, 2)} on C" if meets_node else ""
    return ScanRecord(cand, INTERSECTION_VIOLATION,
                      f"C1.Omega = {m + q} cannot cover {n} forced neighbours "
                      f"at >= {q - m} each{node_part}; worse for larger mu")


def _scan_node_plus_line(m, lam, q, lines, lab) -> ScanRecord:
    # Residual degree 3m - nu must cover the 5 line-neighbours of C1 (all
    # disjoint from C) at nu - m each: 3m - nu >= 5(nu - m) fails for every
    # nu >= 3m/2.
    cls = lines[lab]
    cand = decomposition(m, lam, [("C", C, q), (lab, cls, q)])
    neighbors = sorted(o for o, d in lines.items() if o != lab and cls.intersect(d) > 0)
    assert all(lines[o].intersect(C) == 0 for o in neighbors)
    n = len(neighbors)
    # 3m - nu >= n(nu - m) fails at nu = q and keeps failing above it.
    assert q * (n + 1) > m * (n + 3), "node-plus-line budget must fail at the floor"
    return ScanRecord(cand, INTERSECTION_VIOLATION,
                      f"residual degree {3 * m} - nu must cover "
                      f"{len(neighbors)} forced neighbours of {lab} at nu - m "
                      f"each; impossible for every nu >= {q}")


def _scan_line_pair(m, lam, q, lines, a, b) -> ScanRecord:
    (la, ca), (lb, cb) = a, b
    forced = Fraction(3 * m, 2)
    if forced.denominator != 1:
        cand = decomposition(m, lam, [(la, ca, q), (lb, cb, q)])
        return ScanRecord(cand, HALF_INTEGRAL,
                          f"the degree budget pins both coefficients to "
                          f"3m/2 = {forced}, not an integer")
    mu = int(forced)
    cand = decomposition(m, lam, [(la, ca, mu), (lb, cb, mu)])
    if not cand.residual_is_effective(SurfaceModel.NODAL):
        return ScanRecord(cand, RESIDUAL_NOT_EFFECTIVE,
                          f"Omega = -{m}K - {mu}*({la}+{lb}) = "
                          f"{cand.residual} is not effective")
    # Effective of degree 0 means Omega = k*C; any line disjoint from C then
    # sees m = L.Z = (3m/2)(L.C1 + L.C2), a multiple of 3m/2.
    k = _node_multiple(cand.residual)
    assert k is not None and k >= 0
    for lab, d in sorted(lines.items()):
        if d.intersect(C) != 0:
            continue
        seen = mu * (d.intersect(ca) + d.intersect(cb)) + k * d.intersect(C)
        if seen != m:
            return ScanRecord(cand, INTERSECTION_VIOLATION,
                              f"{lab}.Z = {seen} but membership in |-{m}K| "
                              f"demands {m}")
    return ScanRecord(cand, None, "all line intersections consistent")


def _scan_node_plus_pair(m, lam, q, lines, a, b) -> ScanRecord:
    (la, ca), (lb, cb) = a, b
    forced = Fraction(3 * m, 2)
    if forced.denominator != 1:
        cand = decomposition(m, lam,
                             [("C", C, q), (la, ca, q), (lb, cb, q)])
        return ScanRecord(cand, HALF_INTEGRAL,
                          f"the degree budget pins the line coefficients to "
                          f"3m/2 = {forced}, not an integer")
    nu = int(forced)
    # 0 = C.Z pins the C-coefficient: 2*mu = nu*(C.C1 + C.C2).
    s = C.intersect(ca) + C.intersect(cb)
    mu_forced = Fraction(nu * s, 2)
    if mu_forced.denominator != 1 or mu_forced < q:
        cand = decomposition(m, lam, [("C", C, q), (la, ca, nu), (lb, cb, nu)])
        return ScanRecord(cand, INTERSECTION_VIOLATION,
                          f"C.Z = 0 forces the C-coefficient to {mu_forced}, "
                          f"incompatible with the floor {q}")
    mu = int(mu_forced)
    cand = decomposition(m, lam, [("C", C, mu), (la, ca, nu), (lb, cb, nu)])
    # The residual has degree 0 and may not contain C, so it must vanish.
    if cand.residual != DivisorClass(0, (0,) * 6):
        return ScanRecord(cand, RESIDUAL_NOT_EFFECTIVE,
                          f"degree-0 residual avoiding C must vanish, got "
                          f"{cand.residual}")
    for lab, d in sorted(lines.items()):
        seen = mu * d.intersect(C) + nu * (d.intersect(ca) + d.intersect(cb))
        if seen != m:
            return ScanRecord(cand, INTERSECTION_VIOLATION,
                              f"{lab}.Z = {seen} but membership in |-{m}K| "
                              f"demands {m}")
    return ScanRecord(cand, None, "all line intersections consistent")


def _node_multiple(d: DivisorClass) -> Optional[int]:
    """k with d = k*C, or None."""
    for k in {d.a} | set(d.b[:3]):
        if d == k * C:
            return k
    return None


# -- alpha_1 from the line catalogue ------------------------------------------

@dataclass(frozen=True)
class Alpha1Report:
    """Best alpha_1 bound from anticanonical members built out of lines.

    final is True when the bound is attained by a worst member (an Eckardt
    point); otherwise the value only bounds alpha_1 from above, since members
    with worse singularities (cuspidal curves etc.) are outside the catalogue.
    """

    value: Fraction
    final: bool
    witness: str

    def __str__(self):
        kind = "exact" if self.final else "upper bound only"
        return f"alpha_1 {'=' if self.final else '<='} {self.value} ({kind}; {self.witness})"


def alpha1_report(config: SixPointConfig) -> Alpha1Report:
    """Scan the tritangent catalogue of a smooth-model six-point config.

    A plane section through three concurrent lines has local model x*y*(x+y)
    at the triple point; a genuine triangle only has normal crossings, local
    model x*y.  Both thresholds are computed by the resolution engine, not
    quoted.
    """
    if config.mode is not SurfaceModel.SMOOTH:
        raise ValueError("smooth-model configurations only")
    found = eckardt_points(config)
    if found:
        value = blowup_lct(parse_germ("x*y*(x+y)")).value
        rec = found[0]
        where = (rec.location if isinstance(rec.location, str)
                 else f"at {rec.location}")
        return Alpha1Report(value=value, final=True,
                            witness=f"three concurrent lines "
                                    f"{{{', '.join(rec.triple)}}} {where}")
    value = blowup_lct(parse_germ("x*y")).value
    return Alpha1Report(value=value, final=False,
                        witness="triangles of coplanar lines only reach "
                                "normal crossings")
