import logging
import numpy as np
from scipy.optimize import brentq
import vplb.errors as er
from vplb.core.mesh import FluidState

# The internal energy per unit mass of the 1V closure is theta / 2 = p / (2 n),
# i.e. p / ((gamma - 1) n) with gamma - 1 = 2.
GAMMA = 3.0

TOLERANCE = 1e-13
MAX_NEWTON = 50


def _sound_speed(n, p):
    return np.sqrt(GAMMA * p / n)


class _Side(object):
    def __init__(self, state):
        n, u, theta = (float(q) for q in state)
        if n <= 0 or theta <= 0:
            raise er.DomainError("Riemann data needs n > 0 and theta > 0")
        self.n = n
        self.u = u
        self.p = n * theta
        self.c = _sound_speed(n, self.p)
        self.a = 2.0 / ((GAMMA + 1.0) * n)
        self.b = (GAMMA - 1.0) / (GAMMA + 1.0) * self.p

    def f(self, p):
        """Velocity jump across the wave connecting this state to pressure p, and its derivative."""
        if p > self.p:
            root = np.sqrt(self.a / (p + self.b))
            return (p - self.p) * root, root * (1.0 - 0.5 * (p - self.p) / (p + self.b))
        ratio = p / self.p
        exponent = (GAMMA - 1.0) / (2.0 * GAMMA)
        value = 2.0 * self.c / (GAMMA - 1.0) * (ratio**exponent - 1.0)
        return value, ratio**(-(GAMMA + 1.0) / (2.0 * GAMMA)) / (self.n * self.c)


class RiemannSolution(object):
    """
    Exact self-similar solution of the gamma = 3 Euler equations for the
    left and right FluidStates.

    Attributes:
        p_star, u_star: pressure and velocity between the outer waves
    """

    def __init__(self, left, right):
        self.left = _Side(left)
        self.right = _Side(right)
        L, R = self.left, self.right

        if 2.0 * (L.c + R.c) / (GAMMA - 1.0) <= R.u - L.u:
            raise er.VacuumError(left, right)

        self.p_star = self._solve_pressure()
        fl, _ = L.f(self.p_star)
        fr, _ = R.f(self.p_star)
        self.u_star = 0.5 * (L.u + R.u) + 0.5 * (fr - fl)

    def pressure_function(self, p):
        return self.left.f(p)[0] + self.right.f(p)[0] + self.right.u - self.left.u

    def _initial_guess(self):
        L, R = self.left, self.right
        # two-rarefaction approximation
        z = (GAMMA - 1.0) / (2.0 * GAMMA)
        num = L.c + R.c - 0.5 * (GAMMA - 1.0) * (R.u - L.u)
        den = L.c / L.p**z + R.c / R.p**z
        return max((num / den)**(1.0 / z), TOLERANCE)

    def _solve_pressure(self):
        p = self._initial_guess()
        for k in range(MAX_NEWTON):
            fl, dl = self.left.f(p)
            fr, dr = self.right.f(p)
            value = fl + fr + self.right.u - self.left.u
            step = value / (dl + dr)
            p_new = p - step
            if not p_new > 0:
                break
            change = abs(p_new - p) / (0.5 * (p_new + p))
            p = p_new
            logging.debug('Riemann Newton iteration %i: p=%.16e, change %e' % (k, p, change))
            if change < TOLERANCE:
                return p
        logging.warning('Newton iteration for the star pressure failed, falling back to bisection')
        return self._bracketed_pressure()

    def _bracketed_pressure(self):
        low = TOLERANCE * min(self.left.p, self.right.p)
        high = max(self.left.p, self.right.p)
        while self.pressure_function(high) < 0:
            high *= 2.0
        if self.pressure_function(low) > 0:
            return low
        return brentq(self.pressure_function, low, high, xtol=TOLERANCE * high, rtol=4 * np.finfo(float).eps)

    def wave_speeds(self):
        """(left-most, right-most) signal speeds, for choosing output windows."""
        L, R = self.left, self.right
        if self.p_star > L.p:
            s_left = self._shock_speed(L, -1.0)
        else:
            s_left = L.u - L.c
        if self.p_star > R.p:
            s_right = self._shock_speed(R, 1.0)
        else:
            s_right = R.u + R.c
        return s_left, s_right

    def _shock_speed(self, side, sign):
        ratio = self.p_star / side.p
        return side.u + sign * side.c * np.sqrt((GAMMA + 1.0) / (2.0 * GAMMA) * ratio
                                                + (GAMMA - 1.0) / (2.0 * GAMMA))

    def _star_density(self, side):
        ratio = self.p_star / side.p
        if self.p_star > side.p:
            g6 = (GAMMA - 1.0) / (GAMMA + 1.0)
            return side.n * (ratio + g6) / (g6 * ratio + 1.0)
        return side.n * ratio**(1.0 / GAMMA)

    def _sample_side(self, side, xi, sign):
        # sign = -1 for the left wave, +1 for the right wave (xi mirrored)
        star = (self._star_density(side), self.u_star, self.p_star)
        outer = (side.n, side.u, side.p)
        if self.p_star > side.p:
            speed = self._shock_speed(side, sign)
            return outer if sign * (xi - speed) >= 0 else star

        head = side.u + sign * side.c
        tail = self.u_star + sign * side.c * (self.p_star / side.p)**((GAMMA - 1.0) / (2.0 * GAMMA))
        if sign * (xi - head) >= 0:
            return outer
        if sign * (xi - tail) <= 0:
            return star
        g5 = 2.0 / (GAMMA + 1.0)
        g6 = (GAMMA - 1.0) / (GAMMA + 1.0)
        base = g5 - sign * g6 / side.c * (side.u - xi)
        n = side.n * base**(2.0 / (GAMMA - 1.0))
        u = g5 * (-sign * side.c + 0.5 * (GAMMA - 1.0) * side.u + xi)
        p = side.p * base**(2.0 * GAMMA / (GAMMA - 1.0))
        return n, u, p

    def sample(self, xi):
        """FluidState at the similarity coordinates xi = x / t (scalar or array)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        rows = [self._sample_side(self.left, s, -1.0) if s <= self.u_star
                else self._sample_side(self.right, s, 1.0) for s in xi.ravel()]
        n, u, p = (np.reshape(c, xi.shape) for c in np.array(rows).T)
        return FluidState(n, u, p / n)


def exact_riemann(left, right, xi):
    return RiemannSolution(left, right).sample(xi)
