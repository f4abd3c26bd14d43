import itertools

import pytest

from fusion_obstruct.abelian import HomocyclicModule


def brute_span(m: HomocyclicModule, gens) -> set:
    """Closure of ``gens`` under addition, element by element."""
    out = {m.zero()}
    frontier = [m.zero()]
    gens = [m.element(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = m.add(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def all_elements(m: HomocyclicModule):
    return [tuple(v) for v in itertools.product(range(m.modulus), repeat=m.r)]


@pytest.fixture(scope="session")
def golay22():
    from fusion_obstruct.golay import GolaySection

    return GolaySection(22)


@pytest.fixture(scope="session")
def golay_dual():
    from fusion_obstruct.golay import GolaySection

    return GolaySection(22, dual=True)


@pytest.fixture(scope="session")
def threem22():
    from fusion_obstruct.threem22 import ThreeM22Module

    return ThreeM22Module()
