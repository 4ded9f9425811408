"""Exact rational linear constraints and Fourier-Motzkin elimination.

A constraint is  sum(coeff * var) REL constant  with REL one of <=, <, =.
Internally everything is reduced to <=/< rows (equalities are split), and a
variable is eliminated by combining every upper row with every lower row;
strictness propagates through combinations (strict + anything = strict).
Per-variable bounds are read off the fully projected one-variable systems,
with attainment flags so that a supremum can be told apart from a maximum.
Forced values are variables whose attained lower and upper bounds coincide;
integrality is checked post hoc on forced values of integer-flagged variables.

The module also carries an exact Phase-I simplex used for "is this vector a
non-negative combination of these generators" queries (effective-cone tests),
where Fourier-Motzkin projection would blow up.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Q = Fraction

LE = "<="
LT = "<"
EQ = "="


def _as_q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point is not allowed in constraint systems")
    return Fraction(x)


@dataclass
class LinearConstraint:
    """sum(coeffs[v] * v) rel rhs, with a provenance tag for audit."""

    coeffs: dict[str, Fraction]
    rel: str
    rhs: Fraction
    tag: str = ""

    def __post_init__(self):
        if self.rel not in (LE, LT, EQ):
            raise ValueError(f"relation must be one of <=, <, =; got {self.rel!r}")
        self.coeffs = {v: _as_q(c) for v, c in self.coeffs.items() if c != 0}
        self.rhs = _as_q(self.rhs)

    def evaluate(self, point: Mapping[str, Fraction]) -> bool:
        lhs = sum((c * point[v] for v, c in self.coeffs.items()), Q(0))
        if self.rel == LE:
            return lhs <= self.rhs
        if self.rel == LT:
            return lhs < self.rhs
        return lhs == self.rhs

    def __str__(self):
        if not self.coeffs:
            lhs = "0"
        else:
            parts = []
            for v in sorted(self.coeffs):
                c = self.coeffs[v]
                term = v if c == 1 else (f"-{v}" if c == -1 else f"{c}*{v}")
                parts.append(term if not parts or term.startswith("-") else f"+ {term}")
            lhs = " ".join(parts).replace("+ -", "- ")
        return f"{lhs} {self.rel} {self.rhs}"


def le(coeffs, rhs, tag=""):
    return LinearConstraint(dict(coeffs), LE, rhs, tag)


def lt(coeffs, rhs, tag=""):
    return LinearConstraint(dict(coeffs), LT, rhs, tag)


def eq(coeffs, rhs, tag=""):
    return LinearConstraint(dict(coeffs), EQ, rhs, tag)


def ge(coeffs, rhs, tag=""):
    return LinearConstraint({v: -_as_q(c) for v, c in dict(coeffs).items()}, LE,
                            -_as_q(rhs), tag)


def gt(coeffs, rhs, tag=""):
    return LinearConstraint({v: -_as_q(c) for v, c in dict(coeffs).items()}, LT,
                            -_as_q(rhs), tag)


@dataclass
class ConstraintSystem:
    variables: list[str]
    constraints: list[LinearConstraint] = field(default_factory=list)
    integer_vars: set[str] = field(default_factory=set)

    def add(self, constraint: LinearConstraint) -> None:
        unknown = set(constraint.coeffs) - set(self.variables)
        if unknown:
            raise ValueError(f"undeclared variables: {sorted(unknown)}")
        self.constraints.append(constraint)

    def copy(self) -> "ConstraintSystem":
        return ConstraintSystem(list(self.variables),
                                list(self.constraints),
                                set(self.integer_vars))


@dataclass(frozen=True)
class VarBounds:
    lower: Optional[Fraction]        # None = unbounded below
    lower_attained: bool
    upper: Optional[Fraction]        # None = unbounded above
    upper_attained: bool

    def __str__(self):
        lo = "-inf <" if self.lower is None else (
            f"{self.lower} <=" if self.lower_attained else f"{self.lower} <")
        hi = "< inf" if self.upper is None else (
            f"<= {self.upper}" if self.upper_attained else f"< {self.upper}")
        return f"{lo} _ {hi}"


@dataclass
class SolveReport:
    feasible: bool
    bounds: dict[str, VarBounds]
    forced: dict[str, Fraction]
    integrality: dict[str, bool]     # forced integer-flagged vars: value integral?
    witness: Optional[dict[str, Fraction]]

    @property
    def integrality_contradiction(self) -> bool:
        return any(not ok for ok in self.integrality.values())

    def forced_value(self, var: str) -> Fraction:
        return self.forced[var]


# ---------------------------------------------------------------------------
# Fourier-Motzkin internals.  A system is a pair (eqs, ineqs):
#   eqs:   (coeffs dict, const)          sum(c*x) = const
#   ineqs: (coeffs dict, strict, const)  sum(c*x) <= const, or < when strict
# A variable that appears in an equality is eliminated by Gaussian pivoting
# (no row growth); genuine upper-times-lower FM combination is reserved for
# variables constrained by inequalities only.

_Eq = tuple[dict[str, Fraction], Fraction]
_Ineq = tuple[dict[str, Fraction], bool, Fraction]
_Sys = tuple[list[_Eq], list[_Ineq]]


def _rows_of(system: ConstraintSystem) -> _Sys:
    eqs: list[_Eq] = []
    ineqs: list[_Ineq] = []
    for con in system.constraints:
        if con.rel == EQ:
            eqs.append((dict(con.coeffs), con.rhs))
        else:
            ineqs.append((dict(con.coeffs), con.rel == LT, con.rhs))
    return eqs, ineqs


def _primitive_scale(coeffs: dict[str, Fraction]) -> Fraction:
    denoms = [c.denominator for c in coeffs.values()]
    nums = [c.numerator for c in coeffs.values()]
    return Q(_lcm_list(denoms), _gcd_list(nums))


def _normalize(sys_: _Sys) -> Optional[_Sys]:
    """Dedup rows; return None on a constant or equality contradiction."""
    eqs, ineqs = sys_
    eq_best: dict[tuple, Fraction] = {}
    for coeffs, const in eqs:
        coeffs = {v: c for v, c in coeffs.items() if c != 0}
        if not coeffs:
            if const != 0:
                return None
            continue
        scale = _primitive_scale(coeffs)
        if coeffs[min(coeffs)] < 0:
            scale = -scale
        key = tuple(sorted((v, c * scale) for v, c in coeffs.items()))
        prev = eq_best.get(key)
        if prev is None:
            eq_best[key] = const * scale
        elif prev != const * scale:
            return None
    best: dict[tuple, tuple[bool, Fraction]] = {}
    for coeffs, strict, const in ineqs:
        coeffs = {v: c for v, c in coeffs.items() if c != 0}
        if not coeffs:
            if const < 0 or (strict and const == 0):
                return None
            continue
        scale = _primitive_scale(coeffs)
        key = tuple(sorted((v, c * scale) for v, c in coeffs.items()))
        cand = (strict, const * scale)
        old = best.get(key)
        if old is None or _stronger(cand, old):
            best[key] = cand
    return ([(dict(k), c) for k, c in eq_best.items()],
            [(dict(k), s, c) for k, (s, c) in best.items()])


def _stronger(new: tuple[bool, Fraction], old: tuple[bool, Fraction]) -> bool:
    # for identical coefficient vectors, smaller rhs wins; ties: strict wins
    if new[1] != old[1]:
        return new[1] < old[1]
    return new[0] and not old[0]


def _gcd_list(xs):
    from math import gcd
    g = 0
    for x in xs:
        g = gcd(g, abs(x))
    return g or 1


def _lcm_list(xs):
    from math import gcd
    l = 1
    for x in xs:
        l = l * x // gcd(l, x)
    return l


def _pivot_apply(coeffs, const, var, pivot_coeffs, pivot_const, pivot_c):
    """Substitute var (solved from the pivot equality) into one row."""
    d = coeffs.get(var)
    if not d:
        return coeffs, const
    f = d / pivot_c
    out = {}
    for v in set(coeffs) | set(pivot_coeffs):
        if v == var:
            continue
        val = coeffs.get(v, Q(0)) - f * pivot_coeffs.get(v, Q(0))
        if val != 0:
            out[v] = val
    return out, const - f * pivot_const


def _eliminate(sys_: _Sys, var: str) -> Optional[_Sys]:
    eqs, ineqs = sys_
    pivot = next((i for i, (c, _) in enumerate(eqs) if c.get(var)), None)
    if pivot is not None:
        pc, pconst = eqs[pivot]
        c0 = pc[var]
        new_eqs = [
            _pivot_apply(c, k, var, pc, pconst, c0)
            for i, (c, k) in enumerate(eqs) if i != pivot
        ]
        new_ineqs = []
        for c, strict, k in ineqs:
            nc, nk = _pivot_apply(c, k, var, pc, pconst, c0)
            new_ineqs.append((nc, strict, nk))
        return _normalize((new_eqs, new_ineqs))
    uppers, lowers, rest = [], [], []
    for coeffs, strict, const in ineqs:
        c = coeffs.get(var, Q(0))
        if c > 0:
            uppers.append((coeffs, strict, const, c))
        elif c < 0:
            lowers.append((coeffs, strict, const, c))
        else:
            rest.append((coeffs, strict, const))
    for (cu, su, bu, a), (cl, sl, bl, e) in itertools.product(uppers, lowers):
        # a > 0, e < 0: multiply the upper row by -e and the lower by a
        coeffs = {}
        for v in set(cu) | set(cl):
            val = -e * cu.get(v, Q(0)) + a * cl.get(v, Q(0))
            if val != 0:
                coeffs[v] = val
        coeffs.pop(var, None)
        rest.append((coeffs, su or sl, -e * bu + a * bl))
    return _normalize((eqs, rest))


def _project(sys_: _Sys, eliminate: Sequence[str]) -> Optional[_Sys]:
    current = _normalize(sys_)
    for var in eliminate:
        if current is None:
            return None
        current = _eliminate(current, var)
    return current


def _bounds_from_univariate(sys_: _Sys, var: str) -> Optional[VarBounds]:
    """Bounds for var from rows mentioning var alone. None = infeasible."""
    eqs, ineqs = sys_
    rows = list(ineqs)
    for coeffs, const in eqs:
        rows.append((coeffs, False, const))
        rows.append(({v: -c for v, c in coeffs.items()}, False, -const))
    lower = upper = None
    lower_att = upper_att = True
    for coeffs, strict, const in rows:
        if not coeffs:
            if const < 0 or (strict and const == 0):
                return None
            continue
        c = coeffs[var]
        bound = const / c
        if c > 0:
            if upper is None or bound < upper:
                upper, upper_att = bound, not strict
            elif bound == upper and strict:
                upper_att = False
        else:
            if lower is None or bound > lower:
                lower, lower_att = bound, not strict
            elif bound == lower and strict:
                lower_att = False
    if lower is not None and upper is not None:
        if lower > upper:
            return None
        if lower == upper and not (lower_att and upper_att):
            return None
    return VarBounds(lower, lower is not None and lower_att,
                     upper, upper is not None and upper_att)


def _substitute(sys_: _Sys, var: str, value: Fraction) -> _Sys:
    eqs, ineqs = sys_
    new_eqs = []
    for coeffs, const in eqs:
        c = coeffs.get(var)
        if c is None:
            new_eqs.append((coeffs, const))
        else:
            new_eqs.append(({v: cc for v, cc in coeffs.items() if v != var},
                            const - c * value))
    new_ineqs = []
    for coeffs, strict, const in ineqs:
        c = coeffs.get(var)
        if c is None:
            new_ineqs.append((coeffs, strict, const))
        else:
            new_ineqs.append(({v: cc for v, cc in coeffs.items() if v != var},
                              strict, const - c * value))
    return new_eqs, new_ineqs


def _pick(bounds: VarBounds) -> Fraction:
    lo, hi = bounds.lower, bounds.upper
    if lo is not None and hi is not None:
        if lo == hi or bounds.lower_attained:
            return lo
        if bounds.upper_attained:
            return hi
        return (lo + hi) / 2
    if lo is not None:
        return lo if bounds.lower_attained else lo + 1
    if hi is not None:
        return hi if bounds.upper_attained else hi - 1
    return Q(0)


def solve(system: ConstraintSystem) -> SolveReport:
    """Exact feasibility, per-variable bounds, forced values, integrality."""
    base = _rows_of(system)
    order = list(system.variables)

    feasible = _project(base, order) is not None
    if not feasible:
        return SolveReport(False, {}, {}, {}, None)

    bounds: dict[str, VarBounds] = {}
    for var in order:
        others = [v for v in order if v != var]
        projected = _project(base, others)
        assert projected is not None, "projection of a feasible system is feasible"
        vb = _bounds_from_univariate(projected, var)
        assert vb is not None
        bounds[var] = vb

    forced = {
        v: vb.lower
        for v, vb in bounds.items()
        if vb.lower is not None and vb.lower == vb.upper
        and vb.lower_attained and vb.upper_attained
    }

    # rational witness by successive substitution
    witness: dict[str, Fraction] = {}
    rows = _normalize(base)
    for var in order:
        others = [v for v in order if v not in witness and v != var]
        projected = _project(rows, others)
        assert projected is not None
        vb = _bounds_from_univariate(projected, var)
        assert vb is not None
        value = forced.get(var, _pick(vb))
        witness[var] = value
        rows = _normalize(_substitute(rows, var, value))
        assert rows is not None
    for con in system.constraints:
        assert con.evaluate(witness), f"witness violates {con}"

    integrality = {
        v: forced[v].denominator == 1
        for v in system.integer_vars
        if v in forced
    }
    return SolveReport(True, bounds, forced, integrality, witness)


# ---------------------------------------------------------------------------
# Exact Phase-I simplex: is target a non-negative combination of generators?

def nonnegative_combination(
    generators: Sequence[Sequence], target: Sequence
) -> Optional[list[Fraction]]:
    """Solve sum(lam_i * generators[i]) = target with lam_i >= 0, exactly.

    Returns the coefficient list, or None when infeasible.  Phase-I simplex
    with Bland's rule over Fraction; artificial variables only.
    """
    m = len(target)
    n = len(generators)
    a = [[_as_q(g[r]) for g in generators] for r in range(m)]
    b = [_as_q(t) for t in target]
    for r in range(m):
        if b[r] < 0:
            a[r] = [-x for x in a[r]]
            b[r] = -b[r]
    # tableau columns: n structural + m artificial; artificial basis
    tab = [row[:] + [Q(1) if i == r else Q(0) for i in range(m)] + [b[r]]
           for r, row in enumerate(a)]
    basis = [n + r for r in range(m)]
    # objective: minimize sum of artificials = sum of rows (since basis is artificial)
    cost = [Q(0)] * (n + m + 1)
    for r in range(m):
        for cidx in range(n + m + 1):
            cost[cidx] += tab[r][cidx]

    total = n + m
    while True:
        enter = next((j for j in range(total) if cost[j] > 0), None)
        if enter is None:
            break
        ratios = [(tab[r][total] / tab[r][enter], r)
                  for r in range(m) if tab[r][enter] > 0]
        if not ratios:
            break  # unbounded cannot happen in phase I; defensive
        _, piv = min(ratios, key=lambda p: (p[0], basis[p[1]]))
        pivval = tab[piv][enter]
        tab[piv] = [x / pivval for x in tab[piv]]
        for r in range(m):
            if r != piv and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[piv])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[piv])]
        basis[piv] = enter

    if cost[total] != 0:
        return None
    lam = [Q(0)] * n
    for r, bv in enumerate(basis):
        if bv < n:
            lam[bv] = tab[r][total]
        elif tab[r][total] != 0:
            return None  # artificial stuck at positive level
    # exact re-substitution
    for r in range(m):
        assert sum((lam[i] * _as_q(generators[i][r]) for i in range(n)), Q(0)) \
            == _as_q(target[r])
    assert all(x >= 0 for x in lam)
    return lam


# ---------------------------------------------------------------------------
# Case encodings.  Variable names follow the multiplicities they stand for:
# mu, nu   coefficients of the extracted negative curves in Z(s)
# d        mult_p D
# mult_s   mult_p s (= mult_p Z(s))
# mult_omega  mult_p Omega
# mult_q   multiplicity at the blown-up point Q of the residual
# e1,e2,e3 pairing slacks of the three lines through p

def encode_case2(m: int, include_blowup: bool = True) -> ConstraintSystem:
    """Case of a conic D through p: Z = mu*D + Omega, three lines off D.

    Base rows: log-terminality mult_s > 3m/2, the line pairing m >= mult_s -
    2*mu, the conic pairing 2m >= mult_s + mu, multiplicity additivity with
    mult_p D = 1.  Blow-up rows (axioms from the log-terminality argument at
    the infinitely near point Q): mult_q + mult_s >= 3m and mult_q <=
    mult_omega.
    """
    s = ConstraintSystem(
        variables=["mu", "d", "mult_s", "mult_omega", "mult_q"],
        integer_vars={"mu", "d", "mult_s", "mult_omega", "mult_q"},
    )
    s.add(gt({"mult_s": 1}, Q(3 * m, 2), tag="log-terminality at p"))
    s.add(le({"mult_s": 1, "mu": -2}, m, tag="line pairing L.Z = m"))
    s.add(le({"mult_s": 1, "mu": 1}, 2 * m, tag="conic pairing D.Z = 2m"))
    s.add(eq({"d": 1}, 1, tag="D smooth at p"))
    s.add(eq({"mult_omega": 1, "mu": 1, "mult_s": -1}, 0,
             tag="mult additivity mult_s = mu*d + mult_omega (d = 1)"))
    s.add(ge({"mu": 1}, 0, tag="effectivity"))
    s.add(ge({"mult_omega": 1}, 0, tag="effectivity"))
    if include_blowup:
        s.add(ge({"mult_q": 1, "mult_s": 1}, 3 * m,
                 tag="log-terminality at Q after blow-up"))
        s.add(le({"mult_q": 1, "mult_omega": -1}, 0,
                 tag="mult_Q Omega-bar <= mult_p Omega"))
        s.add(ge({"mult_q": 1}, 0, tag="effectivity"))
    return s


def encode_case3(m: int, include_blowup: bool = True) -> ConstraintSystem:
    """Case of three lines through p: Z = mu*L1 + nu*L2 + D + Omega', D = mult d.

    Pairing rows m = -mu + nu + e1 (e1 >= d), m = mu - nu + e2 (e2 >= d),
    m = mu + nu + e3 (e3 >= 0), additivity mult_s = mu + nu + d, and
    log-terminality mult_s > 3m/2.  Blow-up rows: the reduced inequality
    mult_q + d >= 2m with mult_q <= d, plus the primitive log-terminality
    inequality mult_q + mult_s >= 3m it was reduced from; the reduced form
    alone fixes only d = m, while the pair forces mu = nu = m/2.
    """
    s = ConstraintSystem(
        variables=["mu", "nu", "d", "e1", "e2", "e3", "mult_s", "mult_q"],
        integer_vars={"mu", "nu", "d", "e1", "e2", "e3", "mult_s", "mult_q"},
    )
    s.add(eq({"mu": -1, "nu": 1, "e1": 1}, m, tag="pairing L1.Z = m"))
    s.add(eq({"mu": 1, "nu": -1, "e2": 1}, m, tag="pairing L2.Z = m"))
    s.add(eq({"mu": 1, "nu": 1, "e3": 1}, m, tag="pairing L3.Z = m"))
    s.add(ge({"e1": 1, "d": -1}, 0, tag="D meets L1 at p"))
    s.add(ge({"e2": 1, "d": -1}, 0, tag="D meets L2 at p"))
    s.add(ge({"e3": 1}, 0, tag="effectivity"))
    s.add(eq({"mult_s": 1, "mu": -1, "nu": -1, "d": -1}, 0,
             tag="mult additivity at p"))
    s.add(gt({"mult_s": 1}, Q(3 * m, 2), tag="log-terminality at p"))
    for v in ("mu", "nu", "d"):
        s.add(ge({v: 1}, 0, tag="effectivity"))
    if include_blowup:
        s.add(le({"mult_q": 1, "d": -1}, 0, tag="Q on the strict transform of D"))
        s.add(ge({"mult_q": 1, "d": 1}, 2 * m, tag="reduced blow-up inequality"))
        s.add(ge({"mult_q": 1, "mult_s": 1}, 3 * m,
                 tag="log-terminality at Q after blow-up"))
        s.add(ge({"mult_q": 1}, 0, tag="effectivity"))
    return s


#: sub-case identifiers for the nodal encoding
Q_FREE = "q_free"      # Q on neither strict transform
Q_ON_L = "q_on_l"      # Q on the strict transform of L
Q_ON_C = "q_on_c"      # Q on the strict transform of C

NODAL_SUBCASES = (Q_FREE, Q_ON_L, Q_ON_C)


def encode_nodal(m: int, subcase: Optional[str] = None) -> ConstraintSystem:
    """One-node model at the node's image: Z = mu*C + nu*L + Omega.

    Base rows express C.Omega = 2mu - nu, L.Omega = m - mu + nu and
    D.Omega = 2m - mu - nu (D = -K - C - L), each positive and each an upper
    bound for mult_p Omega, plus additivity, log-terminality and the plane
    pushforward bounds mu <= m, nu <= m.  Sub-cases bolt on the blow-up rows
    at Q: q_free (neither curve through Q), q_on_l, q_on_c; the latter two
    carry the slice (Fubini) inequality of their curve, and q_on_c also the
    Holder row mult_omega >= m/2 needed to pin nu = mult_omega = m/2.
    """
    if subcase is not None and subcase not in NODAL_SUBCASES:
        raise ValueError(f"unknown subcase {subcase!r}")
    variables = ["mu", "nu", "mult_s", "mult_omega",
                 "c_omega", "l_omega", "d_omega"]
    if subcase is not None:
        variables.append("mult_q")
    s = ConstraintSystem(variables=variables, integer_vars=set(variables))
    s.add(eq({"c_omega": 1, "mu": -2, "nu": 1}, 0, tag="C.Omega (C.Z = 0)"))
    s.add(eq({"l_omega": 1, "mu": 1, "nu": -1}, m, tag="L.Omega (L.Z = m)"))
    s.add(eq({"d_omega": 1, "mu": 1, "nu": 1}, 2 * m, tag="D.Omega (D.Z = 2m)"))
    for v in ("c_omega", "l_omega", "d_omega"):
        s.add(gt({v: 1}, 0, tag=f"Omega omits the curve behind {v}"))
        s.add(ge({v: 1, "mult_omega": -1}, 0,
                 tag=f"{v} bounds mult_p Omega (curve through p)"))
    s.add(eq({"mult_s": 1, "mu": -1, "nu": -1, "mult_omega": -1}, 0,
             tag="mult additivity at p"))
    s.add(gt({"mult_s": 1}, Q(3 * m, 2), tag="log-terminality at p"))
    for v in ("mu", "nu", "mult_omega"):
        s.add(ge({v: 1}, 0, tag="effectivity"))
    s.add(le({"mu": 1}, m, tag="plane pushforward multiplicity"))
    s.add(le({"nu": 1}, m, tag="plane pushforward multiplicity"))
    if subcase is None:
        return s

    s.add(ge({"mult_q": 1}, 0, tag="effectivity"))
    s.add(le({"mult_q": 1, "mult_omega": -1}, 0,
             tag="mult_Q Omega-bar <= mult_p Omega"))
    if subcase == Q_FREE:
        s.add(ge({"mult_q": 1, "mult_s": 1}, 3 * m,
                 tag="log-terminality at Q after blow-up"))
    elif subcase == Q_ON_L:
        s.add(ge({"nu": 1, "mult_q": 1, "mult_s": 1}, 3 * m,
                 tag="log-terminality at Q (L-bar through Q)"))
        s.add(ge({"l_omega": 1, "mult_omega": -1, "mult_s": 1}, 3 * m,
                 tag="fubini slice through L"))
    else:  # Q_ON_C
        s.add(ge({"mu": 1, "mult_q": 1, "mult_s": 1}, 3 * m,
                 tag="log-terminality at Q (C-bar through Q)"))
        s.add(ge({"c_omega": 1, "mult_omega": -1, "mult_s": 1}, 3 * m,
                 tag="fubini slice through C"))
        s.add(ge({"mult_omega": 1}, Q(m, 2), tag="holder"))
    return s


# ---------------------------------------------------------------------------
# Textual system format:  `int mu` declarations, one constraint per line,
# e.g. `2*mu + nu <= 3*m`; `m` is substituted numerically at load time.

_REL_RE = re.compile(r"(<=|>=|<|>|=)")
_TERM_RE = re.compile(r"^\s*$")


class SystemParseError(ValueError):
    pass


def _parse_side(text: str, m: Optional[int]):
    """Parse a linear expression into (coeffs, const)."""
    coeffs: dict[str, Fraction] = {}
    const = Q(0)
    text = text.replace("-", "+-")
    for raw in text.split("+"):
        frag = raw.strip()
        if not frag:
            continue
        sign = Q(1)
        if frag.startswith("-"):
            sign = Q(-1)
            frag = frag[1:].strip()
        value = Q(1)
        name = None
        for piece in frag.split("*"):
            piece = piece.strip()
            if not piece:
                raise SystemParseError(f"empty factor in {raw!r}")
            if re.fullmatch(r"\d+(/\d+)?", piece):
                value *= Q(piece)
            elif piece == "m":
                if m is None:
                    raise SystemParseError("m used but no value supplied")
                value *= m
            elif re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", piece):
                if name is not None:
                    raise SystemParseError(f"two variables multiplied in {frag!r}")
                name = piece
            else:
                raise SystemParseError(f"cannot parse factor {piece!r}")
        if name is None:
            const += sign * value
        else:
            coeffs[name] = coeffs.get(name, Q(0)) + sign * value
    return coeffs, const


def parse_system(text: str, m: Optional[int] = None) -> ConstraintSystem:
    """Load a constraint system from the documented plain-text format."""
    variables: list[str] = []
    integer_vars: set[str] = set()
    pending: list[LinearConstraint] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        decl = re.fullmatch(r"(int|var)\s+([A-Za-z_][A-Za-z_0-9]*)", line)
        if decl:
            kind, name = decl.groups()
            if name not in variables:
                variables.append(name)
            if kind == "int":
                integer_vars.add(name)
            continue
        parts = _REL_RE.split(line)
        if len(parts) != 3:
            raise SystemParseError(f"line {lineno}: expected one relation in {line!r}")
        lhs_text, rel, rhs_text = parts
        lc, lk = _parse_side(lhs_text, m)
        rc, rk = _parse_side(rhs_text, m)
        coeffs = dict(lc)
        for v, c in rc.items():
            coeffs[v] = coeffs.get(v, Q(0)) - c
        rhs = rk - lk
        if rel in (">", ">="):
            coeffs = {v: -c for v, c in coeffs.items()}
            rhs = -rhs
            rel = LT if rel == ">" else LE
        pending.append(LinearConstraint(coeffs, rel, rhs, tag=f"line {lineno}"))
    for con in pending:
        for v in con.coeffs:
            if v not in variables:
                variables.append(v)
    system = ConstraintSystem(variables, [], integer_vars)
    for con in pending:
        system.add(con)
    return system
