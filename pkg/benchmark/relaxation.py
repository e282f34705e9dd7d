import sys
sys.path.append('..')
import numpy as np
from timing import report, timed, timing
from vplb.core.maxwellian import eval_maxwellian
from vplb.diagnostics.config import RunConfig
from vplb.diagnostics.runner import run
from vplb.systems.problems import Relaxation


# Backward-Euler relaxation of a double Maxwellian, nu=1e3, dt=1e-2, t in [0, 1]

print("---- direct")
result, seconds = timed(run, RunConfig('relaxation', method='direct'))
timing("run", seconds)
for k, drift in enumerate(result.summary['max_rel_dM']):
    report("relative drift of <f e_%i>" % k, drift, 1e-11)

mesh = result.system.mesh
equilibrium = eval_maxwellian(Relaxation.equilibrium, mesh.v)
f = result.system.distribution(result.state).values
report("max |f - M(2, 0.5, 4.5)|", np.abs(f - equilibrium[None, :]).max(), 1e-6)

print("---- micro-macro")
result, seconds = timed(run, RunConfig('relaxation', method='mm'))
timing("run", seconds)
for k, g_max in enumerate(result.summary['max_g']):
    report("max |<g e_%i>|" % k, g_max, 1e-13)
f = result.system.distribution(result.state).values
report("max |f - M(2, 0.5, 4.5)|", np.abs(f - equilibrium[None, :]).max(), 1e-6)
