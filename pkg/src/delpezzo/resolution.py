"""Embedded resolution of plane-curve germs by iterated point blow-ups.

The engine tracks, for every exceptional divisor E it creates, the

    a_E  discrepancy      (1 at a smooth ambient point, 1 + sum over the
                           exceptional divisors through the blown-up point)
    b_E  vanishing order  (multiplicity of the full transformed germ at the
                           point, plus the parents' orders)

of standard point-blow-up bookkeeping.  Work happens in local charts: a site
is a germ in coordinates (x, y) over a field K, where either coordinate axis
may be (the strict transform of) an exceptional divisor.  Blowing up maps a
site into chart A (x, y) -> (x, x*y), which keeps the old {y=0} axis, and
chart B (x, y) -> (x*y, y), which keeps the old {x=0} axis; the new
exceptional divisor is {x=0} in chart A and {y=0} in chart B.

Points needing further blow-ups are located along the new exceptional line
only: multiple roots of the restriction of the reduced transform (tangency,
singular point, or several branches), plus the chart origins when a triple
intersection with an old axis occurs.  Roots that are irrational are handled
by extending K; conjugate points yield identical (a, b) data, so one
representative per irreducible factor is blown up and the cluster shares a
single node.

K is always QQ or an absolute algebraic extension QQ(theta); towers that
would arise from nested irrational centers are flattened back to absolute
fields with a primitive element found by resultants.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

import sympy
from sympy import QQ, CRootOf, Poly

from .germs import CurveGerm

_X, _Y = sympy.symbols("x y")
_V = sympy.Symbol("v")
_T, _Z = sympy.symbols("t z")

DEFAULT_MAX_BLOWUPS = 64
MAX_BLOWUPS_ENV = "DELPEZZO_MAX_BLOWUPS"


class DepthExceededError(RuntimeError):
    """Raised when the blow-up budget is exhausted; never a silent answer."""

    def __init__(self, limit: int):
        super().__init__(f"resolution exceeded the blow-up budget of {limit}; "
                         f"raise {MAX_BLOWUPS_ENV} to continue")
        self.limit = limit


def blowup_limit(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get(MAX_BLOWUPS_ENV, DEFAULT_MAX_BLOWUPS))


@dataclass(eq=False)
class ResolutionNode:
    """One exceptional divisor (a conjugate cluster shares one node)."""

    index: int
    a: int
    b: int
    parents: tuple["ResolutionNode", ...]
    site: str

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.a + 1, self.b)

    def chain(self) -> list["ResolutionNode"]:
        """Ancestors (by first parent) from the root down to this node."""
        out, cur = [], self
        while cur is not None:
            out.append(cur)
            cur = cur.parents[0] if cur.parents else None
        return out[::-1]

    def __str__(self):
        return f"E{self.index} (a={self.a}, b={self.b}) at {self.site}"


@dataclass(frozen=True)
class Component:
    """Irreducible rational factor of the germ, with multiplicity."""

    label: str
    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]
    multiplicity: int
    mult_at_origin: int   # 0 when the component misses the origin

    @property
    def through_origin(self) -> bool:
        return self.mult_at_origin > 0

    def as_germ(self) -> CurveGerm:
        if not self.through_origin:
            raise ValueError(f"component {self.label} does not pass through 0")
        return CurveGerm(self.coeffs)

    def __str__(self):
        return f"component {self.label} with multiplicity {self.multiplicity}"


@dataclass(frozen=True)
class Resolution:
    nodes: tuple[ResolutionNode, ...]
    components: tuple[Component, ...]
    blowups: int


# -- germ dictionaries over a sympy domain K --------------------------------

def _mult(g: dict) -> int:
    return min(i + j for i, j in g)


def _chart_a(g: dict, m: int) -> dict:
    # x -> x, y -> x*y, divide by x^m
    return {(i + j - m, j): c for (i, j), c in g.items()}


def _chart_b(g: dict, m: int) -> dict:
    # x -> x*y, y -> y, divide by y^m
    return {(i, i + j - m): c for (i, j), c in g.items()}


def _translate_y(g: dict, K, v0) -> dict:
    """g(x, y + v0) by binomial expansion in the domain K."""
    out: dict = {}
    powers = [K.one]
    top = max(j for _, j in g)
    for _ in range(top):
        powers.append(powers[-1] * v0)
    for (i, j), c in g.items():
        for jj in range(j + 1):
            key = (i, jj)
            val = out.get(key, K.zero) + c * K.convert(comb(j, jj)) * powers[j - jj]
            out[key] = val
    return {e: c for e, c in out.items() if c != K.zero}


def _to_poly(g: dict, K) -> Poly:
    return Poly.from_dict(g, _X, _Y, domain=K)


def _sqf(g: dict, K) -> dict:
    return _to_poly(g, K).sqf_part().rep.to_dict()


def _restrict_to_x0(g: dict, K) -> Poly:
    """The univariate restriction g(0, v) along the new exceptional line."""
    d = {(j,): c for (i, j), c in g.items() if i == 0}
    return Poly.from_dict(d, _V, domain=K)


def _map_coeffs(g: dict, phi: Callable) -> dict:
    out = {}
    for e, c in g.items():
        v = phi(c)
        if v:
            out[e] = v
    return out


# -- field towers ------------------------------------------------------------

def _field_minpoly(K) -> list:
    """Descending QQ coefficient list of K's generator minimal polynomial."""
    return K.mod.to_list()


def _linear_root(factor: Poly, K):
    d = factor.rep.to_dict()
    c1 = d[(1,)]
    c0 = d.get((0,), K.zero)
    return -c0 / c1


def _extend_field(K, q: Poly):
    """Adjoin a root of the irreducible q over K.

    Returns (K2, phi, gamma) with phi an embedding K -> K2 and gamma in K2 a
    root of phi(q).  For K = QQ this is a plain algebraic field; otherwise a
    primitive element for the compositum is located by resultants.
    """
    if K == QQ:
        root = CRootOf(q.as_expr(), 0)
        K2 = QQ.algebraic_field(root)
        return K2, K2.convert, K2.from_sympy(root)

    mod = _field_minpoly(K)                       # alpha's minpoly, descending
    m_expr = sum(c * _T ** k for k, c in enumerate(reversed(mod)))
    # q with alpha written as t: coefficients are ANP with QQ lists
    q_tv: dict[tuple[int, int], object] = {}
    for (k,), c in q.rep.to_dict().items():
        for power, cc in enumerate(reversed(c.to_list())):
            if cc:
                q_tv[(power, k)] = q_tv.get((power, k), 0) + cc

    def q_expr_in(vsym):
        return sum(c * _T ** it * vsym ** iv for (it, iv), c in q_tv.items())

    s = 1
    while True:
        shifted = q_expr_in(_Z - s * _T)
        r = sympy.resultant(m_expr, sympy.expand(shifted), _T)
        rp = Poly(r, _Z, domain=QQ)
        if rp.gcd(rp.diff(_Z)).degree() == 0:
            break
        s += 1
        if s > 40:
            raise RuntimeError("no square-free primitive-element resultant")
    for factor, _ in rp.factor_list()[1]:
        root = CRootOf(factor.as_expr(), 0)
        K2 = QQ.algebraic_field(root)
        delta = K2.from_sympy(root)
        m_over = Poly(m_expr, _T, domain=K2)
        for lin, _m in m_over.factor_list()[1]:
            if lin.degree() != 1:
                continue
            alpha2 = _linear_root(lin, K2)
            gamma2 = delta - K2.convert(s) * alpha2
            value = K2.zero
            for (it, iv), c in q_tv.items():
                value += K2.convert(c) * alpha2 ** it * gamma2 ** iv
            if value == K2.zero:
                def phi(c, _a=alpha2, _K2=K2):
                    acc = _K2.zero
                    for cc in c.to_list():
                        acc = acc * _a + _K2.convert(cc)
                    return acc
                return K2, phi, gamma2
    raise RuntimeError("primitive element search failed")   # unreachable


# -- the engine ---------------------------------------------------------------

class _Engine:
    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0
        self.nodes: list[ResolutionNode] = []

    def blow_up(self, g: dict, K, xa: Optional[ResolutionNode],
                ya: Optional[ResolutionNode], where: str) -> None:
        if self.count >= self.limit:
            raise DepthExceededError(self.limit)
        self.count += 1
        m = _mult(g)
        parents = tuple(p for p in (xa, ya) if p is not None)
        node = ResolutionNode(
            index=len(self.nodes) + 1,
            a=1 + sum(p.a for p in parents),
            b=m + sum(p.b for p in parents),
            parents=parents,
            site=where)
        self.nodes.append(node)

        g_a = _chart_a(g, m)
        g_b = _chart_b(g, m)

        # chart B: only its origin is new; visit when the curve passes through
        if (0, 0) not in g_b:
            self.process(g_b, K, xa, node, where + " / chart B origin")

        # chart A: bad points along the new exceptional line {x = 0}
        g_a_red = _sqf(g_a, K)
        r = _restrict_to_x0(g_a_red, K)
        assert not r.is_zero, "exceptional line cannot be a component"
        through_origin = (0, 0) not in g_a
        origin_needed = ya is not None and through_origin
        if r.degree() >= 1:
            bad = r.gcd(r.diff(_V))
            for q, _m in bad.factor_list()[1]:
                if q.degree() == 1:
                    v0 = _linear_root(q, K)
                    if v0 == K.zero:
                        origin_needed = True
                        continue
                    h = _translate_y(g_a, K, v0)
                    self.process(h, K, node, None,
                                 where + f" / chart A at y={K.to_sympy(v0)}")
                else:
                    K2, phi, gamma = _extend_field(K, q)
                    h = _translate_y(_map_coeffs(g_a, phi), K2, gamma)
                    self.process(h, K2, node, None,
                                 where + f" / chart A at root of {q.as_expr()}")
        if origin_needed:
            self.process(g_a, K, node, ya, where + " / chart A origin")

    def process(self, g: dict, K, xa: Optional[ResolutionNode],
                ya: Optional[ResolutionNode], where: str) -> None:
        """Decide SNC at a site on at least one exceptional axis."""
        g_red = _sqf(g, K)
        if (0, 0) in g_red:
            return   # curve misses the point; axes alone are normal crossings
        if xa is not None and ya is not None:
            self.blow_up(g, K, xa, ya, where)   # curve + two axes: triple point
            return
        if _mult(g_red) >= 2:
            self.blow_up(g, K, xa, ya, where)   # singular reduced transform
            return
        # smooth reduced curve on one axis: transverse iff the linear part
        # involves the non-axis variable
        key = (0, 1) if xa is not None else (1, 0)
        if key not in g_red:
            self.blow_up(g, K, xa, ya, where)   # tangent to the axis
            return


def _components_of(f: CurveGerm) -> tuple[Component, ...]:
    _c, factors = f.to_sympy().factor_list()
    out = []
    for poly, mult in factors:
        terms = poly.rep.to_dict()
        coeffs = tuple((e, Fraction(c.numerator, c.denominator))
                       for e, c in terms.items())
        through = (0, 0) not in terms
        mult0 = min(i + j for i, j in terms) if through else 0
        out.append(Component(str(poly.as_expr()), coeffs, mult, mult0))
    return tuple(out)


def _snc_at_origin(components: tuple[Component, ...]) -> bool:
    """Normal crossings at 0 without any blow-up, judged over QQ factors."""
    through = [c for c in components if c.through_origin]
    if any(c.mult_at_origin != 1 for c in through) or len(through) > 2:
        return False
    if len(through) == 2:
        lins = []
        for c in through:
            t = dict(c.coeffs)
            lins.append((t.get((1, 0), Fraction(0)), t.get((0, 1), Fraction(0))))
        (a1, b1), (a2, b2) = lins
        return a1 * b2 - a2 * b1 != 0   # proportional tangents need a blow-up
    return True


def resolve_germ(f: CurveGerm, max_blowups: Optional[int] = None) -> Resolution:
    """Resolve until the total transform is SNC near the origin fiber."""
    limit = blowup_limit(max_blowups)
    components = _components_of(f)
    engine = _Engine(limit)
    if not _snc_at_origin(components):
        g0 = {e: QQ.convert(c) for e, c in f.coeffs}
        engine.blow_up(g0, QQ, None, None, "origin")
    return Resolution(tuple(engine.nodes), components, engine.count)
