import pytest

import kmroots

A2 = [[2, -1], [-1, 2]]
AFFINE = [[2, -2], [-2, 2]]
G2 = [[2, -1], [-3, 2]]


def test_validate_gcm():
    g = kmroots.validate_gcm(A2)
    assert g.rank == 2
    assert g.matrix == A2
    with pytest.raises(kmroots.KmrootsError) as e:
        kmroots.validate_gcm([[2, 0], [-1, 2]])
    assert e.value.kind == "AsymmetricZero"
    assert isinstance(e.value, ValueError)


def test_real_roots_and_slices():
    roots = kmroots.enumerate_real_roots(kmroots.validate_gcm(AFFINE), 5)
    assert len(roots) == 12
    assert {"root": [2, 1], "coroot": [2, 1]} in roots
    s = kmroots.slice(kmroots.validate_gcm(AFFINE), 5)
    assert len(s["roots"]) == 16
    assert sorted(r["coeffs"] for r in s["roots"] if not r["real"]) == [
        [-2, -2], [-1, -1], [1, 1], [2, 2]]
    g = kmroots.validate_gcm(AFFINE)
    assert kmroots.classify_root(g, [1, 1]) == "imaginary"
    assert kmroots.classify_root(g, [3, 2]) == "real"
    assert kmroots.classify_root(g, [2, 0]) == "not a root"


def test_closure_and_closedness():
    a2 = kmroots.validate_gcm(A2)
    r = kmroots.closure(a2, [[1, 0], [0, 1]])
    assert r["status"] == "Closed"
    assert sorted(r["roots"]) == [[0, 1], [1, 0], [1, 1]]
    assert kmroots.is_closed(a2, [[1, 0], [0, 1], [1, 1]]) is None
    assert kmroots.is_closed(a2, [[1, 0], [0, 1]])["sum"] == [1, 1]
    esc = kmroots.closure(kmroots.validate_gcm(AFFINE), [[1, 0], [0, 1]])
    assert esc["status"] == "EscapedRealRoots"
    assert esc["witness"] == [1, 1]


def test_prenilpotency_and_pairs():
    aff = kmroots.validate_gcm(AFFINE)
    assert kmroots.set_prenilpotent(aff, [[1, 0], [0, 1]])["verdict"] == "No"
    assert kmroots.set_prenilpotent(kmroots.validate_gcm(A2), [[1, 0], [0, 1]])["verdict"] == "Yes"
    p = kmroots.pair_relation(kmroots.validate_gcm(G2), [1, 0], [0, 1])
    assert p["kind"] == "FiniteDihedral"
    assert p["type"] == "G2"
    assert kmroots.pair_relation(aff, [1, 0], [0, 1])["m"] == -2
    assert kmroots.is_nilpotent(kmroots.validate_gcm(A2), [[1, 0], [-1, 0]])["violated"] == "NotAsymmetric"


def test_chamber_in_intersection():
    a2 = kmroots.validate_gcm(A2)
    r = kmroots.chamber_in_intersection(a2, [[-1, 0], [0, 1]], [[-1, 0], [0, 1]], radius=3)
    assert r["found"]
    assert r["word"] == [0]
    with pytest.raises(kmroots.KmrootsError):
        kmroots.chamber_in_intersection(a2, [[1, 0], [-1, 0]], [[1, 0]])


def test_levi_and_types():
    a2 = kmroots.validate_gcm(A2)
    rep = kmroots.verify_levi(a2, [[1, 0], [-1, 0], [0, 1], [1, 1]])
    assert rep["passed"]
    assert rep["type"] == "A1"
    assert rep["coroot_rank"] == 1
    assert sorted(rep["psi_n"]) == [[0, 1], [1, 1]]
    g2 = kmroots.validate_gcm(G2)
    full = kmroots.closure(g2, [[1, 0], [-1, 0], [0, 1], [0, -1]], cap=8)["roots"]
    assert len(full) == 12
    assert kmroots.cartan_type(g2, full) == "G2"


def test_verify_is_deterministic():
    a = kmroots.verify("closure-finite", seed=3, cases=20)
    b = kmroots.verify("closure-finite", seed=3, cases=20, threads=2)
    assert a == b
    assert a["counts"]["fail"] == 0
    with pytest.raises(kmroots.KmrootsError):
        kmroots.verify("nope")
