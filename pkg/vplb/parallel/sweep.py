import logging
import multiprocessing as mp
from vplb.diagnostics.runner import run


def run_summary(config):
    """Run one config and return only its summary (systems do not pickle cheaply)."""
    return run(config).summary


class Sweep(object):
    """
    Independent runs distributed over nworker processes. Results come back
    in the order of the configs.

    Note: with nworker=1 everything runs in the calling process, which keeps
    tracebacks and mocks intact.
    """

    def __init__(self, configs, nworker=1):
        self.configs = list(configs)
        self.nworker = max(1, min(nworker, len(self.configs)))

    def run(self):
        if self.nworker == 1:
            return [run_summary(c) for c in self.configs]
        logging.info('Spawning %i sweep workers for %i runs' % (self.nworker, len(self.configs)))
        pool = mp.Pool(self.nworker)
        try:
            return pool.map(run_summary, self.configs)
        finally:
            pool.close()
            pool.join()


def run_sweep(configs, nworker=1):
    return Sweep(configs, nworker).run()
