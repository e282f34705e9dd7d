import logging
import os
import numpy as np
import vplb.errors as er
from vplb.core.mesh import DistributionField, build_mesh, write_snapshot
from vplb.core.tableau import cfl_dt
from vplb.diagnostics.records import DiagnosticsWriter, damping_rate, record
from vplb.systems.problems import get_problem


class RunResult(object):
    """
    Outcome of run().

    Attributes:
        config: the RunConfig
        system, state: the system and its final state
        records: DiagnosticsRecords at the diagnostics cadence (t = 0 first)
        summary: dict of drift measures, see summarize()
    """

    def __init__(self, config, system, state, records, summary):
        self.config = config
        self.system = system
        self.state = state
        self.records = records
        self.summary = summary

    def series(self, name):
        return np.array([getattr(rec, name) for rec in self.records])


def summarize(records, damping_window=None):
    """
    Drift of the totals relative to the first record, and the damping rate
    of E_pot when a window is given.
    """
    M = np.array([rec.M for rec in records])
    Mf = np.array([rec.Mf for rec in records])
    E = np.array([rec.E_total for rec in records])
    with np.errstate(divide='ignore', invalid='ignore'):
        scale = np.where(M[0] != 0, np.abs(M[0]), 1.0)
    summary = {
        'steps': len(records) - 1,
        't_final': records[-1].t,
        'max_abs_dM': np.abs(M - M[0]).max(axis=0),
        'max_rel_dM': (np.abs(M - M[0]) / scale).max(axis=0),
        'max_abs_dMf': np.abs(Mf - Mf[0]).max(axis=0),
        'max_abs_dE': float(np.abs(E - E[0]).max()),
        'max_rel_dE': float(np.abs(E - E[0]).max() / abs(E[0])) if E[0] != 0 else float('nan'),
        'f_min': min(rec.f_min for rec in records),
    }
    if records[0].g_max is not None:
        summary['max_g'] = np.array([rec.g_max for rec in records]).max(axis=0)

    if damping_window is not None:
        t = np.array([rec.t for rec in records])
        e_pot = np.array([rec.E_pot for rec in records])
        try:
            summary['damping_rate'] = damping_rate(t, e_pot, damping_window)
        except er.UsageError as exc:
            logging.warning('No damping rate: %s' % exc)
            summary['damping_rate'] = None
    return summary


def write_summary(path, summary):
    with open(path, 'w') as fh:
        for key in sorted(summary):
            value = summary[key]
            if isinstance(value, np.ndarray):
                value = ' '.join('%.17g' % v for v in value)
            elif isinstance(value, float):
                value = '%.17g' % value
            fh.write('%s = %s\n' % (key, value))


def build_system(config):
    """Mesh, system and initial state of a RunConfig."""
    problem = get_problem(config.problem)
    mesh = build_mesh(micro_macro=(config.method == 'mm'), **config.mesh_parameters())
    system = problem.system(mesh, config.method, **config.system_options())
    state = system.initial_state(DistributionField.from_function(mesh, problem.f0))
    return system, state


def run(config):
    """
    Integrate a RunConfig to t_end, recording diagnostics every
    diagnostics_every steps and writing snapshots every snapshot_every
    steps when an output directory is set. Errors raised by the numerics
    are re-raised as RunAborted with the failing step.
    """
    system, state = build_system(config)
    mesh = system.mesh
    dt = config.dt if config.dt is not None else cfl_dt(mesh, config.cfl)
    nsteps = int(np.ceil(config.t_end / dt - 1e-9))
    logging.info('Run %s/%s: %ix%i, p=%i, nu=%g, dt=%e, %i steps'
                 % (config.problem, config.method, mesh.nx, mesh.nv, mesh.p, config.nu, dt, nsteps))

    writer = None
    if config.out is not None:
        if not os.path.isdir(config.out):
            os.makedirs(config.out)
        writer = DiagnosticsWriter(os.path.join(config.out, 'diagnostics.csv'))

    records = [record(system, state)]
    if writer is not None:
        writer.write(records[0])

    try:
        for k in range(1, nsteps + 1):
            h = min(dt, config.t_end - state.t)
            try:
                state = system.step(state, h)
                if k % config.diagnostics_every == 0 or k == nsteps:
                    system.distribution(state).check_finite()
                    rec = record(system, state)
                    records.append(rec)
                    if writer is not None:
                        writer.write(rec)
                    logging.info('step %i/%i t=%.6f E_total=%.16e' % (k, nsteps, state.t, rec.E_total))
            except (er.KineticError, er.UsageError) as exc:
                logging.warning('Run aborted at step %i: %s' % (k, exc))
                raise er.RunAborted(k, exc)

            if writer is not None and config.snapshot_every and k % config.snapshot_every == 0:
                path = os.path.join(config.out, 'snapshot_%06i.csv' % k)
                write_snapshot(path, system.distribution(state), state.t)
    finally:
        if writer is not None:
            writer.close()

    summary = summarize(records, config.damping_window)
    if config.out is not None:
        write_summary(os.path.join(config.out, 'summary.txt'), summary)
    logging.info('Run finished at t=%f' % state.t)
    return RunResult(config, system, state, records, summary)
