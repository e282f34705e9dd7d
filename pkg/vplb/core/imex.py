import logging
import numpy as np
import vplb.errors as er


class DirectState(object):
    """
    Solution of the direct method at time t.

    Attributes:
        f: (X, V) nodal distribution
        field: ElectricField consistent with f
        t: time
    """

    def __init__(self, f, field, t=0.0):
        self.f = f
        self.field = field
        self.t = t

    @property
    def E(self):
        return self.field.E


class MicroMacroState(object):
    """
    Solution of the micro-macro method at time t.

    Attributes:
        rho: (X, 3) nodal moments
        g: (X, V) nodal micro distribution
        field: ElectricField consistent with rho
        t: time
    """

    def __init__(self, rho, g, field, t=0.0):
        self.rho = rho
        self.g = g
        self.field = field
        self.t = t

    @property
    def E(self):
        return self.field.E


def check_tableau(tableau, nu):
    if nu < 0:
        raise er.ConfigurationError("Collision frequency must be non-negative, got %r" % nu)
    if nu > 0 and not tableau.implicit:
        raise er.ConfigurationError("Collisions need an IMEX tableau, %s is explicit" % tableau.name)
    if nu > 0 and not tableau.gsa:
        raise er.ConfigurationError("Collisions need a GSA tableau, %s is not" % tableau.name)


def _needed(tableau, nu):
    """Stages whose explicit/implicit rates enter a later stage or the assembly."""
    a_ex, a_im = tableau.a_ex, tableau.a_im
    explicit = np.any(a_ex != 0.0, axis=0)
    implicit = np.any(np.tril(a_im, -1) != 0.0, axis=0) & (nu > 0)
    if not tableau.gsa:
        explicit |= tableau.w_ex != 0.0
    return explicit, implicit


def _accumulate(start, dt, coefficients, rates):
    out = start.copy()
    for c, rate in zip(coefficients, rates):
        if c != 0.0:
            out -= dt * c * rate
    return out


def step_direct(system, state, tableau, dt, nu):
    """
    One IMEX step of the direct method.

    Stage l: f* = f^n - dt sum_m (a~_lm R_vp^m + nu a_lm R_lb^m), then
    (I + a_ll dt nu L[rho(f*)]) f^(l) = f* and a Poisson solve from f^(l).
    system supplies transport_residual(f, field), electric_field(rho) and
    collision_matrix(rho).
    """
    check_tableau(tableau, nu)
    mw = system.mesh.moment_weights
    stages = tableau.stages
    need_ex, need_im = _needed(tableau, nu)
    rates_ex = [None] * stages
    rates_im = [None] * stages

    f_n = state.f
    f_l, field_l = f_n, state.field
    for l in range(stages):
        f_star = _accumulate(f_n, dt, tableau.a_ex[l, :l], rates_ex[:l])
        if nu > 0:
            f_star = _accumulate(f_star, dt * nu, tableau.a_im[l, :l], rates_im[:l])

        lam = tableau.a_im[l, l] * dt * nu
        collisions = None
        if lam > 0:
            collisions = system.collision_matrix(f_star @ mw)
            f_l = collisions.solve(f_star, lam)
        else:
            f_l = f_star

        field_l = system.electric_field(f_l @ mw)
        if need_ex[l]:
            rates_ex[l] = system.transport_residual(f_l, field_l)
        if need_im[l]:
            if collisions is None:
                collisions = system.collision_matrix(f_l @ mw)
            rates_im[l] = collisions.apply(f_l)

    if not tableau.gsa:
        f_l = _accumulate(f_n, dt, tableau.w_ex, rates_ex)
        field_l = system.electric_field(f_l @ mw)
    return DirectState(f_l, field_l, state.t + dt)


def step_mm(system, state, tableau, dt, nu, clean=True):
    """
    One IMEX step of the micro-macro method.

    Stage l:
        rho^(l) = rho^n - dt sum_m a~_lm R_macro^m, then E^(l) from rho^(l);
        g* = g^n + P(rho^n) - P(rho^(l))
             - dt sum_m [a~_lm (R_vlasov^m + R_micro^m) + nu a_lm R_lb^m];
        g* is cleaned when anything was accumulated (and clean is on);
        (I + a_ll dt nu L[rho^(l)]) g^(l) = g*.
    P is the DG projection of the Maxwellian expansion of rho. system
    supplies macro_residual, micro_residual (Vlasov form of g plus the
    Maxwellian transport form), projection, clean_micro, electric_field and
    collision_matrix.
    """
    check_tableau(tableau, nu)
    stages = tableau.stages
    need_ex, need_im = _needed(tableau, nu)
    rates_macro = [None] * stages
    rates_micro = [None] * stages
    rates_im = [None] * stages

    rho_n, g_n = state.rho, state.g
    projection_n = system.projection(rho_n)
    rho_l, g_l, field_l = rho_n, g_n, state.field

    for l in range(stages):
        a_ex = tableau.a_ex[l, :l]
        a_im = tableau.a_im[l, :l] if nu > 0 else np.zeros(l)

        rho_l = _accumulate(rho_n, dt, a_ex, rates_macro[:l])
        field_l = system.electric_field(rho_l)

        g_star = _accumulate(g_n, dt, a_ex, rates_micro[:l])
        g_star = _accumulate(g_star, dt * nu, a_im, rates_im[:l])
        accumulated = np.any(a_ex != 0.0) or np.any(a_im != 0.0)
        if accumulated:
            g_star = g_star + projection_n - system.projection(rho_l)
            if clean:
                g_star = system.clean_micro(g_star)

        lam = tableau.a_im[l, l] * dt * nu
        collisions = None
        if lam > 0:
            collisions = system.collision_matrix(rho_l)
            g_l = collisions.solve(g_star, lam)
        else:
            g_l = g_star

        if need_ex[l]:
            rates_macro[l] = system.macro_residual(rho_l, g_l, field_l)
            rates_micro[l] = system.micro_residual(rho_l, g_l, field_l)
        if need_im[l]:
            if collisions is None:
                collisions = system.collision_matrix(rho_l)
            rates_im[l] = collisions.apply(g_l)

    if not tableau.gsa:
        rho_l = _accumulate(rho_n, dt, tableau.w_ex, rates_macro)
        field_l = system.electric_field(rho_l)
        g_l = _accumulate(g_n, dt, tableau.w_ex, rates_micro) + projection_n - system.projection(rho_l)
        if clean:
            g_l = system.clean_micro(g_l)

    logging.debug('mM step to t=%f done' % (state.t + dt))
    return MicroMacroState(rho_l, g_l, field_l, state.t + dt)
