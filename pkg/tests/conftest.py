import pytest

from cdiag import fincat, groups

# S3 multiplication table over elements indexed by the lexicographic
# permutations of {0,1,2}; row i, column j holds i*j.
S3_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 4, 5, 2, 3],
    [2, 3, 0, 1, 5, 4],
    [3, 2, 5, 4, 0, 1],
    [4, 5, 1, 0, 3, 2],
    [5, 4, 3, 2, 1, 0],
]


@pytest.fixture(scope="session")
def s3_category():
    return fincat.one_object_group(S3_TABLE, name="S3")


@pytest.fixture(scope="session")
def s2_category():
    return fincat.one_object_group([[0, 1], [1, 0]], name="S2")


@pytest.fixture(scope="session")
def c4_category():
    return fincat.one_object_group(groups.cyclic_table(4), name="C4")
