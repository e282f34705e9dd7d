import sys
sys.path.append('..')
import numpy as np
from timing import report, timed, timing
import vplb.core.mesh as m
from vplb.core.tableau import cfl_dt
from vplb.diagnostics.config import RunConfig
from vplb.diagnostics.runner import run
from vplb.parallel.sweep import run_sweep
from vplb.systems.problems import Riemann, get_problem, init_problem


# Shock tube in the field-free limit. Usage: python riemann.py [nworker]

nworker = int(sys.argv[1]) if len(sys.argv) > 1 else 1
problem = get_problem('riemann')


def evolve(system, state, t_end):
    dt = cfl_dt(system.mesh, 0.75)
    while state.t < t_end - 1e-12:
        state = system.step(state, min(dt, t_end - state.t))
    return state


def fluid(result):
    return m.fluid_from_moments(result.system.kinetic_moments(result.state), result.system.mesh.x)


print("---- conservation, mm + clean, nu=1e3, 256x16")
# with ghost states the momentum total moves by t (p_L - p_R)
mesh = problem.mesh(nx=256, nv=16)
_, system, state = init_problem('riemann', 'mm', mesh=mesh, bc='periodic')
before = m.global_totals(m.MomentField(mesh, state.rho))
state, seconds = timed(evolve, system, state, 0.1)
timing("periodic run", seconds)
after = m.global_totals(m.MomentField(mesh, state.rho))
for k in range(3):
    report("periodic |dM_%i|" % k, abs(after[k] - before[k]), 1e-12)

result, seconds = timed(run, RunConfig('riemann', method='mm'))
timing("ghost run", seconds)
pressure_jump = Riemann.left.n * Riemann.left.theta - Riemann.right.n * Riemann.right.theta
dM = result.records[-1].M - result.records[0].M
print("ghost dM = %.3e %.3e %.3e, t (p_L - p_R) = %.3e" % (tuple(dM) + (result.state.t * pressure_jump,)))

print("---- method agreement, 256x16")
for nu, bound in ((1e1, 2e-4), (1e3, 5e-2)):
    configs = [RunConfig('riemann', method=method, nu=nu) for method in ('direct', 'mm')]
    direct, mm = (run(c) for c in configs)
    a, b = fluid(direct), fluid(mm)
    for name in ('n', 'u', 'theta'):
        report("nu=%g max |%s_direct - %s_mm|" % (nu, name, name),
               np.abs(getattr(a, name) - getattr(b, name)).max(), bound)

print("---- constraint violation, nu=1e4, 256x4")
base = dict(method='mm', nu=1e4, nv=4)
runs = [('inconsistent, no clean', dict(inconsistent_quadrature=True, clean=False)),
        ('inconsistent, clean', dict(inconsistent_quadrature=True, clean=True)),
        ('consistent, no clean', dict(clean=False, extended_cells=False)),
        ('consistent, no clean, [-12, 12]', dict(clean=False, extended_cells=False,
                                                  v_min=-12.0, v_max=12.0, nv=8)),
        ('extended cells, no clean', dict(clean=False, extended_cells=True))]
summaries, seconds = timed(run_sweep, [RunConfig('riemann', **dict(base, **opts)) for _, opts in runs],
                           nworker)
timing("%i runs" % len(runs), seconds)
s = dict((name, summary) for (name, _), summary in zip(runs, summaries))

g0 = s['inconsistent, no clean']['max_g'][0]
report("inconsistent max |<g e_0>|", g0, 1e-2, below=False)
report("inconsistent max |<g e_0>|", g0, 1e-1)
for name in ('inconsistent, no clean', 'inconsistent, clean'):
    print("%s: rho drift %s, <f e> drift %s" % (name, s[name]['max_abs_dM'], s[name]['max_abs_dMf']))
report("cleaned max |<g e>|", s['inconsistent, clean']['max_g'].max(), 1e-13)
report("consistent max |<g e_0>|", s['consistent, no clean']['max_g'][0], 1e-3)
report("consistent [-12, 12] max |<g e_0>|", s['consistent, no clean, [-12, 12]']['max_g'][0], 1e-12)
report("extended cells max |<g e_0>|", s['extended cells, no clean']['max_g'][0], 1e-14)
