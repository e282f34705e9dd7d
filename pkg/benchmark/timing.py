import timeit


def wrapper(func, *args, **kwargs):
    def wrapped():
        return func(*args, **kwargs)
    return wrapped


def timed(func, *args, **kwargs):
    """Run func once; returns (result, seconds)."""
    out = []
    time = timeit.Timer(wrapper(lambda: out.append(func(*args, **kwargs)))).timeit(1)
    return out[0], time


def report(name, value, bound, below=True):
    ok = value <= bound if below else value >= bound
    sign = '<=' if below else '>='
    print("%-56s %10.3e  (%s %.1e)  %s" % (name, value, sign, bound, 'ok' if ok else 'FAIL'))
    return ok


def timing(name, seconds):
    print("%-56s %10.3f s" % (name, seconds))
