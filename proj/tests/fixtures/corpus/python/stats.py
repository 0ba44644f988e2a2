"""Summary statistics."""


def mean(values):
    if not values:
        return 0.0
    return sum(values) / len(values)


def describe(values, label="data", *, precision=2):
    lo = hi = None
    for v in values:
        if lo is None or v < lo:
            lo = v
        if hi is None or v > hi:
            hi = v
    try:
        avg = round(mean(values), precision)
    except TypeError:
        avg = None
    return f"{label}: {lo}..{hi} avg {avg}"
