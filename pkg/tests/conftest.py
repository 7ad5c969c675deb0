import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

from cubicf.algnum import isolate_real_roots, make_algebraic
from cubicf.poly import IntPoly, content_primitive, is_squarefree, rational_roots

CBRT2 = IntPoly((-2, 0, 0, 1))
COS27 = IntPoly((-1, -2, 1, 1))  # roots 2cos(2k*pi/7)
GOLDEN = IntPoly((-1, -1, 1))
SQRT2 = IntPoly((-2, 0, 1))


@pytest.fixture(scope="session")
def cbrt2():
    return make_algebraic(CBRT2, index=1)


@pytest.fixture(scope="session")
def cos27_largest():
    return make_algebraic(COS27, index=3)


@pytest.fixture(scope="session")
def golden():
    return make_algebraic(GOLDEN, index=2)


@pytest.fixture(scope="session")
def sqrt2():
    return make_algebraic(SQRT2, index=2)


def random_irreducible_cubic(rng: random.Random, bound: int = 20) -> IntPoly:
    """Primitive irreducible cubic with coefficients in [-bound, bound]."""
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(3)] + [rng.randint(1, bound)]
        f = IntPoly(tuple(coeffs))
        if f.degree() != 3:
            continue
        _, g = content_primitive(f)
        if not is_squarefree(g) or rational_roots(g):
            continue
        return g


def random_cubic_number(rng: random.Random, bound: int = 20):
    f = random_irreducible_cubic(rng, bound)
    nroots = len(isolate_real_roots(f))
    return make_algebraic(f, index=rng.randint(1, nroots))
