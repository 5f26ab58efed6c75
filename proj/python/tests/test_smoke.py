import pytest

import clusteraff

A1 = [[0, 2], [-2, 0]]
A2 = [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]


def test_mutation_is_an_involution():
    once = clusteraff.mutate_matrix(A2, 1)
    assert once == [[0, -1, 2], [1, 0, -1], [-2, 1, 0]]
    assert clusteraff.mutate_matrix(once, 1) == A2
    assert clusteraff.mutate_matrix_word(A1, [0, 1]) == A1


def test_symmetrizer():
    assert clusteraff.symmetrizer([[0, 4], [-1, 0]]) == [4, 1]
    with pytest.raises(clusteraff.ClusterError):
        clusteraff.symmetrizer([[0, 1], [1, 0]])


def test_theta_delta_rank2():
    e = clusteraff.ThetaEngine(A1)
    assert e.delta == [1, 1]
    assert e.tubes == []
    t = clusteraff.theta(e, "delta")
    assert t["label"] == [-1, 1]
    assert clusteraff.poly_terms(t["poly"]) == {(-1, 1, 0, 0): 1, (-1, -1, 1, 0): 1, (1, -1, 1, 1): 1}


def test_broken_lines_match_engine():
    e = clusteraff.ThetaEngine(A1)
    t2 = clusteraff.theta(e, 2)
    bl = clusteraff.theta2(A1, t2["label"], 8)
    assert clusteraff.poly_terms(bl) == clusteraff.poly_terms(t2["poly"])


def test_tubes_and_verify():
    e = clusteraff.ThetaEngine(A2)
    assert e.delta == [1, 1, 1]
    assert len(e.tubes) == 1
    ok, checked, failures = e.verify("imexch")
    assert ok and checked > 0 and failures == []
    assert "expansion" in clusteraff.identity_names()


def test_scatter2_and_cluster_variable():
    d = clusteraff.scatter2([[0, 1], [-1, 0]], 6)
    assert d["consistent"]
    assert len(d["walls"]) == 3
    x = clusteraff.cluster_variable(A1, [-1, 2])
    assert clusteraff.poly_terms(x) == {(-1, 2, 0, 0): 1, (-1, 0, 1, 0): 1}
