import sys
sys.path.append('..')
from timing import report, timed, timing
from vplb.core.mesh import fluid_from_moments
from vplb.diagnostics.config import RunConfig
from vplb.diagnostics.records import error_norm, reference_average, reference_floor, velocity_dofs
from vplb.diagnostics.runner import run


# Fluid regime (nu=1e4) shock tube: L1 errors of both methods against the
# averaged high-resolution reference. Usage: python efficiency.py [nv_ref]

nv_ref = int(sys.argv[1]) if len(sys.argv) > 1 else 32
NU = 1e4


def profiles(result):
    system = result.system
    state = fluid_from_moments(system.kinetic_moments(result.state), system.mesh.x)
    return dict(n=state.n, u=state.u, theta=state.theta)


(ref_direct, ref_mm), seconds = timed(lambda: [run(RunConfig('riemann', method=method, nu=NU, nv=nv_ref))
                                               for method in ('direct', 'mm')])
timing("references, nv=%i" % nv_ref, seconds)
mesh = ref_direct.system.mesh
a, b = profiles(ref_direct), profiles(ref_mm)
reference = dict((name, reference_average(a[name], b[name])) for name in a)
for name in reference:
    print("reference floor %-5s %.3e" % (name, reference_floor(a[name], b[name], mesh)))

errors = {}
for nv in (4, 8):
    for method in ('direct', 'mm'):
        result, seconds = timed(run, RunConfig('riemann', method=method, nu=NU, nv=nv))
        errors[method, nv] = dict((name, error_norm(x, reference[name], mesh))
                                  for name, x in profiles(result).items())
        timing("%s, nv=%i (%i velocity dofs)" % (method, nv, velocity_dofs(method, nv, mesh.p)), seconds)
        print("  L1 errors n %.3e  u %.3e  theta %.3e" % tuple(errors[method, nv][k] for k in ('n', 'u', 'theta')))

for name in ('n', 'u', 'theta'):
    report("nv=4 error ratio direct/mm (%s)" % name,
           errors['direct', 4][name] / errors['mm', 4][name], 5.0, below=False)
    ratio = errors['direct', 8][name] / errors['mm', 8][name]
    report("nv=8 error ratio direct/mm (%s)" % name, max(ratio, 1 / ratio), 2.0)
