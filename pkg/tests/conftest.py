import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PSEUDOHARM_LONG_TESTS"):
        return
    skip_long = pytest.mark.skip(
        reason="long run; set PSEUDOHARM_LONG_TESTS=1 to enable")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


def simpson(f, a, b, n=4001):
    """Plain composite Simpson oracle, independent of package quadrature."""
    if n % 2 == 0:
        n += 1
    x = np.linspace(a, b, n)
    y = np.array([f(v) for v in x])
    h = (b - a) / (n - 1)
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum())


def one_sided_derivative(f, x0, h, side):
    """Third-order one-sided first derivative at x0 (side=+1 right, -1 left)."""
    s = float(side)
    f0 = f(x0)
    f1 = f(x0 + s * h)
    f2 = f(x0 + 2 * s * h)
    f3 = f(x0 + 3 * s * h)
    return s * (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h)
