"""Session-scoped construction fixtures; everything downstream is immutable."""

import pytest

from g24verify import cliques, euclid, graph, hermitian
from g24verify.pipeline import RunConfig, run_check


@pytest.fixture(scope="session")
def plane():
    return hermitian.build_plane()


@pytest.fixture(scope="session")
def bases(plane):
    return hermitian.enumerate_bases(plane)


@pytest.fixture(scope="session")
def isosets(bases):
    return [b.isoset for b in bases]


@pytest.fixture(scope="session")
def g(isosets):
    return graph.build_graph(isosets)


@pytest.fixture(scope="session")
def srg_params(g):
    return graph.verify_srg(g)


@pytest.fixture(scope="session")
def spectrum(srg_params):
    return graph.srg_spectrum(srg_params)


@pytest.fixture(scope="session")
def part(g, isosets):
    return graph.split_B_C(g, isosets, anchor=1)


@pytest.fixture(scope="session")
def y(g):
    return euclid.build_representation(g)


@pytest.fixture(scope="session")
def contrasts(part):
    return euclid.build_contrasts(part)


@pytest.fixture(scope="session")
def certificates(y, part, spectrum):
    return euclid.certified_dimension_chain(y, part, spectrum)


@pytest.fixture(scope="session")
def special_cliques(g, part, isosets):
    return cliques.enumerate_special_cliques(g, part, isosets)


@pytest.fixture(scope="session")
def cover(special_cliques, part):
    return cliques.exact_cover_partition(special_cliques, part.c)


@pytest.fixture(scope="session")
def full_report():
    """One full pipeline run with every optional stage enabled."""
    cfg = RunConfig(with_clebsch=True, with_uniqueness=True)
    return run_check(cfg)
