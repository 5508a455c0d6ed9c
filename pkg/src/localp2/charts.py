"""Chart-local geometric data for the mirror of local P^2.

The mirror moduli is covered by three charts: large-radius (variable y),
orbifold (w = y^(-1/3)) and conifold (s = 27y + 1).  In each chart the flat
coordinate x is the distinguished solution of the Picard-Fuchs system, and
everything the quantization pipeline consumes is derived from it:

    theta x       solution of  L2 = theta^2 + 3y(3 theta + 1)(3 theta + 2),
                  theta = y d/dy rewritten in the chart variable
    Yukawa        -1/(3(1+27y)) in the (dy/y)^3 frame
    Delta_alg     3(1+27y) theta^2 x / theta x + 27y + 3a  (theta x theta frame)

Frames: 'theta' means scalars against the (dy/y)^n / theta^n pairing,
'flat' means scalars against dx^n / (d/dx)^n.  An n-point covariant scalar
converts theta -> flat by dividing by (theta x)^n; the contravariant
propagator converts by multiplying by (theta x)^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .series import LaurentSeries, Rational, SeriesError, rat

__all__ = [
    "Chart",
    "LR",
    "ORB",
    "CON",
    "CHARTS",
    "FlatCoordinate",
    "PropagatorSeries",
    "chart_theta",
    "one_plus_27y",
    "rational_27y",
    "pf_second_order",
    "pf_third_order",
    "mirror_map_lr",
    "mirror_map_orb",
    "mirror_map_con",
    "lr_mirror_g",
    "yukawa",
    "yukawa_flat",
    "propagator_alg",
    "alg_genus_one_constant",
    "genus_one_form",
    "q_exponential_data",
    "e2_series",
    "eta24_series",
    "e2_from_periods",
    "eta24_from_periods",
]


@dataclass(frozen=True)
class Chart:
    """One of the three local coordinates on the mirror moduli P(3,1)."""

    tag: str
    var: str

    def __repr__(self) -> str:
        return f"Chart({self.tag})"


LR = Chart("large-radius", "y")
ORB = Chart("orbifold", "w")
CON = Chart("conifold", "s")
CHARTS = (LR, ORB, CON)


def chart_theta(chart: Chart, f: LaurentSeries) -> LaurentSeries:
    """theta = y d/dy acting on a series in the chart variable.

    LR: exponentwise k c_k (window preserved).
    Orbifold (w = y^(-1/3)): -(1/3) w d/dw, exponentwise -(k/3) c_k.
    Conifold (s = 27y+1): (s-1) d/ds, loses one coefficient at the top and
    may extend the window one step down.
    """
    if chart is LR:
        return f.theta()
    if chart is ORB:
        return f.theta().scale(rat(-1, 3))
    d = f.derive()
    return d.shift(1).sub(d)


def one_plus_27y(chart: Chart, order: int) -> LaurentSeries:
    """1 + 27y as an exact series in the chart variable.

    At the orbifold 1 + 27y = (w^3 + 27)/w^3 has a pole; callers that need a
    regular object use its inverse or rational_27y.
    """
    if chart is LR:
        return LaurentSeries.from_poly("y", [1, 27], order)
    if chart is ORB:
        num = LaurentSeries.from_poly("w", [27, 0, 0, 1], order + 3)
        return num.shift(-3)
    return LaurentSeries.from_poly("s", [0, 1], order)


def rational_27y(chart: Chart, order: int) -> LaurentSeries:
    """27y in the chart variable (Laurent at the orbifold)."""
    if chart is LR:
        return LaurentSeries.from_poly("y", [0, 27], order)
    if chart is ORB:
        return LaurentSeries.monomial("w", 27, -3, order)
    return LaurentSeries.from_poly("s", [-1, 1], order)


@dataclass(frozen=True)
class FlatCoordinate:
    """Per-chart mirror map data.

    theta_x: series for theta x in the chart variable.
    regular_part: the single-valued part of x (t - log y at LR, the orbifold
    mirror map at ORB, x_con itself at CON).
    """

    chart: Chart
    theta_x: LaurentSeries
    regular_part: LaurentSeries


@dataclass(frozen=True)
class PropagatorSeries:
    """Propagator scalar in a declared frame with its opposite parameter a.

    The stored series in frame 'theta' is Delta_alg = Delta(P_alg(a), P_chart);
    the directed propagator feeding chart-side Feynman sums is
    Delta(P_chart, P_alg) = -Delta_alg.
    """

    chart: Chart
    frame: str  # 'theta' or 'flat'
    series: LaurentSeries
    a: Rational

    def to_frame(self, frame: str, fc: FlatCoordinate) -> "PropagatorSeries":
        if frame == self.frame:
            return self
        tx2 = fc.theta_x.mul(fc.theta_x)
        if frame == "flat":
            out = self.series.mul(tx2)
        elif frame == "theta":
            out = self.series.div(tx2)
        else:
            raise ValueError(f"unknown frame {frame!r}")
        return PropagatorSeries(self.chart, frame, out, self.a)

    def directed(self) -> LaurentSeries:
        """Delta(P_chart, P_alg) in the stored frame."""
        return -self.series


# --------------------------------------------------------------------------
# Picard-Fuchs operators and their holomorphic solutions
# --------------------------------------------------------------------------


def pf_second_order(chart: Chart) -> Callable[[LaurentSeries], LaurentSeries]:
    """L2 = theta^2 + 3y(3 theta + 1)(3 theta + 2) in the chart variable.

    Returned as an exact operator on series; theta x of each chart is
    annihilated by it on the full window.
    """

    def apply(f: LaurentSeries) -> LaurentSeries:
        th = chart_theta(chart, f)
        t1 = th.add(f.scale(rat(2, 3)))           # (theta + 2/3) f
        t2 = chart_theta(chart, t1).add(t1.scale(rat(1, 3)))
        y27 = rational_27y(chart, f.order + 4)
        return chart_theta(chart, th).add(y27.mul(t2).scale(3))

    return apply


def pf_third_order(chart: Chart) -> Callable[[LaurentSeries], LaurentSeries]:
    """L3 = theta^3 + 3y theta (3 theta + 1)(3 theta + 2), annihilating the
    flat coordinates themselves (and constants)."""

    def apply(f: LaurentSeries) -> LaurentSeries:
        t1 = chart_theta(chart, f).add(f.scale(rat(2, 3)))  # (theta + 2/3) f
        t2 = chart_theta(chart, t1).add(t1.scale(rat(1, 3)))  # (theta+1/3)(theta+2/3) f
        t3 = chart_theta(chart, t2)
        y27 = rational_27y(chart, f.order + 4)
        return chart_theta(chart, chart_theta(chart, chart_theta(chart, f))) \
            .add(y27.mul(t3).scale(3))

    return apply


def lr_theta_t(order: int) -> LaurentSeries:
    """Holomorphic L2 solution at y=0 with a_0 = 1:
    a_d = -3(3d-1)(3d-2)/d^2 a_{d-1}; begins 1 - 6y + 90y^2 - 1680y^3."""
    a = [rat(1)]
    for d in range(1, order):
        a.append(rat(-3 * (3 * d - 1) * (3 * d - 2), d * d) * a[-1])
    return LaurentSeries("y", 0, a, order)


def lr_mirror_g(order: int) -> LaurentSeries:
    """The classical mirror series g(y) = sum (3d-1)!/(d!)^3 (-1)^(d+1) y^d."""
    coeffs = [rat(0)]
    num = 1  # (3d-1)! running value
    den = 1  # (d!)^3
    for d in range(1, order):
        fact_lo = 3 * d - 3
        if d == 1:
            num = 2  # 2!
        else:
            num *= (fact_lo + 1) * (fact_lo + 2) * fact_lo
        den *= d ** 3
        coeffs.append(rat(num * (-1) ** (d + 1), den))
    return LaurentSeries("y", 0, coeffs, order)


def mirror_map_lr(order: int) -> FlatCoordinate:
    """Large-radius flat coordinate t: theta t normalized to 1 at y=0,
    regular part t - log y with zero constant term."""
    if order < 2:
        raise ValueError("order must be at least 2")
    tt = lr_theta_t(order)
    reg = tt.add_scalar(-1).integrate_theta()
    return FlatCoordinate(LR, tt, reg)


def orb_theta_tfrak(order: int) -> LaurentSeries:
    """theta of the orbifold mirror map: c_{j+3} = -j^2 c_j / (27(j+1)(j+2))
    with c_1 = -1/3; exponents are 1 mod 3."""
    c = [rat(0)] * order
    if order > 1:
        c[1] = rat(-1, 3)
    j = 1
    while j + 3 < order:
        c[j + 3] = -rat(j * j, 27 * (j + 1) * (j + 2)) * c[j]
        j += 3
    return LaurentSeries("w", 0, c, order)


def orb_tfrak_closed_form(order: int) -> LaurentSeries:
    """Mirror theorem series sum_n (-1)^n prod_{j<n} (1/3+j)^3 / (3n+1)! w^(3n+1)."""
    c = [rat(0)] * order
    prod = rat(1)
    fact = 1
    n = 0
    while 3 * n + 1 < order:
        k = 3 * n + 1
        c[k] = rat((-1) ** n) * prod / fact
        prod *= (rat(1, 3) + n) ** 3
        fact *= (k + 1) * (k + 2) * (k + 3)
        n += 1
    return LaurentSeries("w", 0, c, order)


def mirror_map_orb(order: int) -> FlatCoordinate:
    """Orbifold flat coordinate, built twice (closed form and L2 recurrence);
    a mismatch signals a chart-conversion bug."""
    if order < 5:
        raise ValueError("order must be at least 5")
    tf = orb_tfrak_closed_form(order)
    tht = orb_theta_tfrak(order)
    # theta tfrak = -(1/3) w tfrak'(w): same exponents, coefficient -(k/3)
    alt = tf.theta().scale(rat(-1, 3))
    if not tht.agrees(alt):
        raise SeriesError("orbifold mirror map: ODE and closed form disagree")
    return FlatCoordinate(ORB, tht, tf)


def con_theta_xcon(order: int) -> LaurentSeries:
    """Holomorphic L2 solution at s=0 normalized to -1 there (= theta x_con).

    Solved incrementally: the coefficient of s^m in L2(f) involves
    f_{m-1}, f_m, f_{m+1} with the f_{m+1} coefficient (m+1)^2 != 0.
    """
    L2 = pf_second_order(CON)
    pad = order + 3
    lam: list[list[Rational]] = []
    for k in range(pad):
        mono = LaurentSeries.monomial("s", 1, k, pad + 2)
        img = L2(mono)
        lam.append([img.coeff(m) for m in range(pad)])
    b = [rat(0)] * order
    b[0] = rat(-1)
    for m in range(order - 1):
        tot = rat(0)
        for k in (m - 1, m, m + 1):
            if 0 <= k <= m:
                tot += b[k] * lam[k][m]
        pivot = lam[m + 1][m]
        if pivot == 0:
            raise SeriesError(f"conifold recurrence degenerate at step {m}")
        b[m + 1] = -tot / pivot
    return LaurentSeries("s", 0, b, order)


def mirror_map_con(order: int) -> FlatCoordinate:
    """Conifold flat coordinate x_con = s + 11/18 s^2 + ...; regular_part is
    x_con itself and theta_x = (s-1) x_con'."""
    if order < 5:
        raise ValueError("order must be at least 5")
    u = con_theta_xcon(order)
    # x_con' = u/(s-1), integrate with zero constant term
    xp = u.div(LaurentSeries.from_poly("s", [-1, 1], order))
    coeffs = [rat(0)]
    for k in range(xp.order):
        c = xp.coeff(k) if k >= xp.valuation else rat(0)
        coeffs.append(c / (k + 1))
    xcon = LaurentSeries("s", 0, coeffs, xp.order + 1)
    return FlatCoordinate(CON, u, xcon)


def mirror_map(chart: Chart, order: int) -> FlatCoordinate:
    if chart is LR:
        return mirror_map_lr(order)
    if chart is ORB:
        return mirror_map_orb(order)
    return mirror_map_con(order)


# --------------------------------------------------------------------------
# Yukawa coupling, propagators, genus-one data
# --------------------------------------------------------------------------


def yukawa_theta_frame(chart: Chart, order: int) -> LaurentSeries:
    """-1/(3(1+27y)) in the (dy/y)^3 frame, as a chart-variable series."""
    return one_plus_27y(chart, order).invert().scale(rat(-1, 3))


def yukawa_flat(chart: Chart, fc: FlatCoordinate) -> LaurentSeries:
    """The Yukawa coupling in the chart's flat frame dx^3 (chart variable)."""
    tx = fc.theta_x
    cube = tx.mul(tx).mul(tx)
    return yukawa_theta_frame(chart, tx.order + 4).div(cube)


def yukawa(chart: Chart, order: int) -> LaurentSeries:
    """The Yukawa coupling in the chart's canonical display frame.

    LR: series of -1/(3(1+27y)) in (dy/y)^3; orbifold: 9/(w^3+27) in dw^3;
    conifold: Laurent series in x_con itself, frame dx_con^3.
    """
    if chart is LR:
        return yukawa_theta_frame(LR, order)
    if chart is ORB:
        return LaurentSeries.from_poly("w", [27, 0, 0, 1], order).invert().scale(9)
    fc = mirror_map_con(order + 4)
    flat = yukawa_flat(CON, fc)
    out = flat.compose(fc.regular_part.reverse())
    return LaurentSeries("x_con", out.valuation, out.coeffs, out.order)


def propagator_alg(chart: Chart, a: Rational, fc: FlatCoordinate) -> PropagatorSeries:
    """Delta_alg = 3(1+27y) theta^2 x / theta x + 27y + 3a in the theta frame.

    Regular in every chart: the orbifold pole of 27y cancels against the
    first term, which the Laurent arithmetic handles by itself.
    """
    if fc.chart is not chart:
        raise ValueError("flat coordinate belongs to a different chart")
    tx = fc.theta_x
    t2x = chart_theta(chart, tx)
    n = tx.order + 4
    term = one_plus_27y(chart, n).mul(t2x).div(tx).scale(3)
    lin = rational_27y(chart, n).add_scalar(3 * rat(a))
    return PropagatorSeries(chart, "theta", term.add(lin), rat(a))


def alg_genus_one_constant(a: Rational, order: int = 12) -> Rational:
    """The constant c with hC^(1)_alg,1 = c/(1+27y), computed by transforming
    the closed-form large-radius genus-one data and checking the shape."""
    a = rat(a)
    fc = mirror_map_lr(order)
    h11 = _lr_genus_one_theta_frame(fc)
    prop = propagator_alg(LR, a, fc)
    yuk = yukawa_theta_frame(LR, order)
    halg = h11.add(prop.directed().mul(yuk).scale(rat(1, 2)))
    prod = halg.mul(one_plus_27y(LR, order))
    c = prod.coeff(0)
    for k in range(1, prod.order):
        if prod.coeff(k) != 0:
            raise SeriesError("genus-one algebraic correlator is not c/(1+27y)")
    return c


def _lr_genus_one_theta_frame(fc: FlatCoordinate) -> LaurentSeries:
    """(theta t) dF1/dt = -1/2 theta^2 t/theta t - (1/12)(1 + 27y/(1+27y))."""
    tx = fc.theta_x
    n = tx.order
    t2 = tx.theta()
    out = t2.div(tx).scale(rat(-1, 2))
    frac = rational_27y(LR, n).div(one_plus_27y(LR, n))
    return out.add(frac.add_scalar(1).scale(rat(-1, 12)))


def genus_one_form(chart: Chart, a: Rational, fc: FlatCoordinate) -> LaurentSeries:
    """The genus-one one-point function in the chart's flat frame.

    LR comes from the closed form; the other charts are produced by the
    (g,n) = (1,1) transform from the algebraic side, whose single datum is
    the constant c = alg_genus_one_constant(a).
    """
    a = rat(a)
    if chart is LR:
        return _lr_genus_one_theta_frame(fc).div(fc.theta_x)
    c = alg_genus_one_constant(a)
    n = fc.theta_x.order + 4
    halg = one_plus_27y(chart, n).invert().scale(c)
    prop = propagator_alg(chart, a, fc)
    yuk = yukawa_theta_frame(chart, n)
    h = halg.add(prop.series.mul(yuk).scale(rat(1, 2)))
    return h.div(fc.theta_x)


# --------------------------------------------------------------------------
# q-expansions and the modularity test series
# --------------------------------------------------------------------------


def q_exponential_data(order: int) -> tuple[FlatCoordinate, LaurentSeries, LaurentSeries]:
    """(mirror map, q1(y), y(q1)) with q1 = y exp(regular part of t)."""
    fc = mirror_map_lr(order)
    q_of_y = fc.regular_part.exp().shift(1)
    y_of_q = q_of_y.reverse()
    y_of_q = LaurentSeries("q1", y_of_q.valuation, y_of_q.coeffs, y_of_q.order)
    return fc, q_of_y, y_of_q


def _to_q(f: LaurentSeries, y_of_q: LaurentSeries) -> LaurentSeries:
    f = LaurentSeries("q1", f.valuation, f.coeffs, f.order)
    return f.compose(y_of_q)


def genus_zero_gw(order: int) -> dict[int, Rational]:
    """n_{0,d} from the Yukawa coupling: d^3 n_{0,d} = [q1^d] d^3F0/dt^3."""
    fc, _, y_of_q = q_exponential_data(order + 2)
    f3 = _to_q(yukawa_flat(LR, fc), y_of_q)
    return {d: f3.coeff(d) / rat(d) ** 3 for d in range(1, min(order, f3.order))}


def _q_series_of_modular_Q(order: int) -> LaurentSeries:
    """Q(q1) = -q1 exp(-3 sum d^2 n_{0,d} q1^d), the exponentiated modular
    parameter as an exact q1-series."""
    n0 = genus_zero_gw(order)
    body = LaurentSeries("q1", 0,
                         [rat(0)] + [-3 * rat(d) ** 2 * n0[d] for d in range(1, order)],
                         order)
    return body.exp().shift(1).scale(-1)


def e2_series(order: int) -> LaurentSeries:
    """E2 = 1 - 24 sum sigma_1(n) Q^n re-expanded in q1."""
    Q = _q_series_of_modular_Q(order + 1)
    sigma = [0] * (order + 1)
    for d in range(1, order + 1):
        for m in range(d, order + 1, d):
            sigma[m] += d
    e2_in_Q = LaurentSeries("q1", 0,
                            [rat(1)] + [rat(-24 * sigma[n]) for n in range(1, order + 1)],
                            order + 1)
    return e2_in_Q.compose(Q)


def eta24_series(order: int) -> LaurentSeries:
    """eta^24 = Q prod (1 - Q^n)^24 re-expanded in q1."""
    Q = _q_series_of_modular_Q(order + 2)
    prod = LaurentSeries.monomial("q1", 1, 0, order + 1)
    qn = LaurentSeries.monomial("q1", 1, 0, order + 1)
    for _ in range(1, order + 1):
        qn = qn.mul(Q)
        prod = prod.mul(qn.scale(-1).add_scalar(1).pow(24))
    return prod.mul(Q)


def e2_from_periods(order: int) -> LaurentSeries:
    """(theta t)((1+108y) theta t + 12(1+27y) theta^2 t) in q1: the
    rationalized second-Eisenstein identity's period side."""
    fc, _, y_of_q = q_exponential_data(order + 2)
    tx = fc.theta_x
    n = tx.order
    t2 = tx.theta()
    inner = LaurentSeries.from_poly("y", [1, 108], n).mul(tx) \
        .add(LaurentSeries.from_poly("y", [1, 27], n).mul(t2).scale(12))
    return _to_q(tx.mul(inner), y_of_q)


def eta24_from_periods(order: int) -> LaurentSeries:
    """-y(1+27y)^3 (theta t)^12 in q1: the 24th-power eta identity's side."""
    fc, _, y_of_q = q_exponential_data(order + 2)
    tx = fc.theta_x
    n = tx.order
    out = LaurentSeries.from_poly("y", [1, 27], n).pow(3) \
        .mul(tx.pow(12)).shift(1).scale(-1)
    return _to_q(out, y_of_q)
