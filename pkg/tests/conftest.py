import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latticerig.core import Framework
from latticerig.generators import knight_2d


@pytest.fixture(scope="session")
def n5() -> Framework:
    return knight_2d(5, 5)


@pytest.fixture(scope="session")
def unit_square() -> Framework:
    return Framework(2, [(0, 0), (1, 0), (1, 1), (0, 1)],
                     [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture(scope="session")
def triangle() -> Framework:
    return Framework(2, [(0, 0), (4, 0), (0, 3)], [(0, 1), (1, 2), (0, 2)])


@pytest.fixture(scope="session")
def braced_cube() -> Framework:
    """The 2-lattice cube in R^3 with both diagonals added on the x=1 face."""
    coords = [(x, y, z) for z in (0, 1) for y in (0, 1) for x in (0, 1)]
    index = {p: i for i, p in enumerate(coords)}
    bars = []
    for p in coords:
        for axis in range(3):
            q = list(p)
            q[axis] += 1
            q = tuple(q)
            if q in index:
                bars.append((index[p], index[q]))
    bars.append((index[(1, 0, 0)], index[(1, 1, 1)]))
    bars.append((index[(1, 1, 0)], index[(1, 0, 1)]))
    return Framework(3, tuple(coords), tuple(bars))
