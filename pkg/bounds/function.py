import math

DOMAIN_TOL = 1e-12


def _g(y: float, beta: float) -> float:
    return math.exp(beta * (y - 1.0))


def _G(y: float, beta: float) -> float:
    return _g(y, beta) / beta


def check_domain(z1: float, z2: float, x: float, beta: float) -> None:
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    if not -DOMAIN_TOL <= z1 <= z2 + DOMAIN_TOL or not z2 <= 1.0 + DOMAIN_TOL:
        raise ValueError(f"need 0 <= z1 <= z2 <= 1, got z1={z1}, z2={z2}")
    if not -DOMAIN_TOL <= x <= 1.0 + DOMAIN_TOL:
        raise ValueError(f"x must lie in [0, 1], got {x}")


def f_eval(z1: float, z2: float, x: float, beta: float) -> float:
    """G(z2) - G(z1) + (1 - g(x))(1 - z1) + (1 - z2)(G(x) - G(0)) + z1 (1 - g(0))."""
    check_domain(z1, z2, x, beta)
    return (_G(z2, beta) - _G(z1, beta)
            + (1.0 - _g(x, beta)) * (1.0 - z1)
            + (1.0 - z2) * (_G(x, beta) - _G(0.0, beta))
            + z1 * (1.0 - _g(0.0, beta)))


def f_expanded(z1: float, z2: float, x: float, beta: float) -> float:
    """Same function regrouped by g(x): constant part plus g(x)/beta times (1 - z2 + beta z1 - beta)."""
    check_domain(z1, z2, x, beta)
    g0 = math.exp(-beta)
    gx = _g(x, beta)
    return ((_g(z2, beta) - _g(z1, beta)) / beta
            + 1.0
            - g0 / beta * (1.0 - z2 + beta * z1)
            + gx / beta * (1.0 - z2 + beta * z1 - beta))


def argmin_x(z1: float, z2: float, beta: float) -> float:
    """0 when 1 - z2 >= beta (1 - z1), else 1."""
    return 0.0 if 1.0 - z2 >= beta * (1.0 - z1) else 1.0


def line(beta: float) -> float:
    """1 - e^{-beta}."""
    return 1.0 - math.exp(-beta)


def curve(beta: float, x: float) -> float:
    """(1/beta)(e^{beta(x-1)} - e^{-beta}) + ((1 - e^{-beta})/beta)(1 - x)."""
    return (math.exp(beta * (x - 1.0)) - math.exp(-beta)) / beta + line(beta) / beta * (1.0 - x)


def boundary_term(beta: float, z2: float) -> float:
    """Reduced term at z1 = 1 - (1 - z2)/beta: (1/beta)(e^{beta(z2-1)} - e^{z2-1}) + 1 - e^{-beta}."""
    return (math.exp(beta * (z2 - 1.0)) - math.exp(z2 - 1.0)) / beta + line(beta)


def curve_minimizer(beta: float) -> float:
    """Stationary point of the convex curve, clipped to [0, 1]."""
    x = 1.0 + math.log(line(beta) / beta) / beta
    return min(1.0, max(0.0, x))


def combined_lower_bound(z1: float, z2: float, yc: float, beta: float) -> float:
    """f(z1, z2, y^c_t(1)) per unit reward."""
    return f_eval(z1, z2, yc, beta)
