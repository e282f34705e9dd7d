import sys
sys.path.append('..')
import numpy as np
from timing import report, timed, timing
from vplb.core.tableau import cfl_dt
from vplb.diagnostics.config import RunConfig
from vplb.diagnostics.records import phase_lag
from vplb.diagnostics.runner import build_system, run
from vplb.parallel.sweep import run_sweep
from vplb.reference.euler_poisson import euler_poisson_solve


# Landau damping to t=50. Usage: python landau.py [nworker]

nworker = int(sys.argv[1]) if len(sys.argv) > 1 else 1
RATES = {0.0: 0.1534, 0.25: 0.0746, 1.0: 0.0312}

print("---- damping rates, mm, 32x64")
nus = sorted(RATES)
summaries, seconds = timed(run_sweep, [RunConfig('landau', method='mm', nu=nu) for nu in nus], nworker)
timing("%i runs" % len(nus), seconds)
for nu, summary in zip(nus, summaries):
    rate = summary['damping_rate']
    if rate is None:
        print("nu=%g: no damping rate in the window" % nu)
        continue
    print("nu=%g: rate %.4f (expected %.4f)" % (nu, rate, RATES[nu]))
    report("nu=%g relative rate error" % nu, abs(rate / RATES[nu] - 1.0), 0.05)
    if nu > 0:
        print("nu=%g: max |dE/E| = %.3e" % (nu, summary['max_rel_dE']))

print("---- fluid limit, nu=1e4, 32x4, against Euler-Poisson")
every = 10
configs = [RunConfig('landau', method=method, nu=1e4, nv=4, diagnostics_every=every)
           for method in ('direct', 'mm')]
dt = cfl_dt(build_system(configs[0])[0].mesh, configs[0].cfl)
reference, seconds = timed(euler_poisson_solve, 'landau', nx=32, dt=dt, every=every)
timing("Euler-Poisson reference", seconds)
for config in configs:
    result, seconds = timed(run, config)
    timing("%s run" % config.method, seconds)
    e_pot = result.series('E_pot')
    size = min(len(e_pot), len(reference.potential_energy))
    lag = phase_lag(np.log(reference.potential_energy[:size]), np.log(e_pot[:size]), max_lag=50)
    if config.method == 'mm':
        report("mm phase lag (output intervals)", abs(lag), 1)
    else:
        report("direct phase lag (output intervals)", abs(lag), 2, below=False)
