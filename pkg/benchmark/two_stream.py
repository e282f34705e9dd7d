import sys
sys.path.append('..')
import numpy as np
from timing import report, timed, timing
from vplb.diagnostics.config import RunConfig
from vplb.diagnostics.runner import run
from vplb.parallel.sweep import run_sweep


# Two-stream instability to t=10 with SSP-RK3.
# Usage: python two_stream.py [--full] [nworker]; --full adds the 128x128 run

full = '--full' in sys.argv
args = [a for a in sys.argv[1:] if a != '--full']
nworker = int(args[0]) if args else 1

EXPECTED = {32: 1.74e-8, 64: 2.19e-9, 128: 2.74e-10}


print("---- energy conservation, mm + clean")
sizes = [32, 64, 128] if full else [32, 64]
configs = [RunConfig('two_stream', method='mm', nx=n, nv=n) for n in sizes]
summaries, seconds = timed(run_sweep, configs, nworker)
timing("%i runs" % len(configs), seconds)
drifts = [s['max_rel_dE'] for s in summaries]
for n, drift in zip(sizes, drifts):
    print("%ix%i  |dE/E| = %.3e  (expected %.2e)" % (n, n, drift, EXPECTED[n]))
    report("%ix%i factor to expected" % (n, n), max(drift / EXPECTED[n], EXPECTED[n] / drift), 3.0)
for (n, a), b in zip(zip(sizes, drifts), drifts[1:]):
    ratio = a / b
    report("ratio %i -> %i above 4" % (n, 2 * n), ratio, 4.0, below=False)
    report("ratio %i -> %i below 12" % (n, 2 * n), ratio, 12.0)

print("---- constraint and energy coupling, 64x64")
# fiducial-domain runs use half the CFL number so all four share dt
runs = [('direct', dict(method='direct', cfl=0.375)),
        ('mm, no clean', dict(method='mm', clean=False, cfl=0.375)),
        ('mm, clean', dict(method='mm', clean=True, cfl=0.375)),
        ('mm, no clean, [-4 pi, 4 pi]', dict(method='mm', clean=False, cfl=0.75, nv=128,
                                             v_min=-4 * np.pi, v_max=4 * np.pi))]
results, seconds = timed(lambda: [run(RunConfig('two_stream', **dict(dict(nx=64, nv=64), **opts)))
                                  for _, opts in runs])
timing("%i runs" % len(runs), seconds)
r = dict((name, result) for (name, _), result in zip(runs, results))


def relative_energy(result):
    e = result.series('E_total')
    return (e - e[0]) / e[0]


report("no clean max |<g e_1>|", r['mm, no clean'].summary['max_g'][1], 1e-3, below=False)
print("no clean max |dE/E| = %.3e" % np.abs(relative_energy(r['mm, no clean'])).max())
reference = np.abs(relative_energy(r['direct'])).max()
for name in ('mm, clean', 'mm, no clean, [-4 pi, 4 pi]'):
    drift = np.abs(relative_energy(r[name])).max()
    report("%s max |dE/E| relative to direct" % name, abs(drift / reference - 1.0), 0.1)
