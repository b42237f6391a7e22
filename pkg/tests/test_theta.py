import json
import math
from fractions import Fraction

import numpy as np
import pytest

from cayley_theta.characters import (IrrepMatrices, abelian_character_table,
                                     abelian_irreps,
                                     symmetric_character_table)
from cayley_theta.errors import WrongFormulation
from cayley_theta.graphs import ConnectionSet, alpha, build_cayley
from cayley_theta.groups import (make_abelian_product, make_symmetric,
                                 perm_unrank)
from cayley_theta.linalg import exact_psd
from cayley_theta.theta import (CayleyGraphSpec, build_lp_D, build_sdp_A,
                                build_sdp_C, certificate_to_json,
                                export_sdpa, extract_matrix_solution,
                                read_sdpa, solve_theta, symmetrize_matrix,
                                validate_certificate)


def s3_spec():
    s3 = make_symmetric(3)
    # connection set: the class of 3-cycles (the derangements of S3)
    return CayleyGraphSpec(s3, ConnectionSet.from_classes(s3, [2]))


def s3_irreps():
    """Explicit real unitary irreps of S3: sign, standard, trivial."""
    s3 = make_symmetric(3)
    u = np.array([[1 / math.sqrt(2), -1 / math.sqrt(2), 0],
                  [1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6)]])
    sign_m, std_m, triv_m = [], [], []
    for g in range(6):
        p = perm_unrank(g, 3)
        P = np.zeros((3, 3))
        for k in range(3):
            P[p[k], k] = 1
        sgn = np.linalg.det(P)
        sign_m.append(np.array([[complex(round(sgn))]]))
        std_m.append((u @ P @ u.T).astype(complex))
        triv_m.append(np.array([[1.0 + 0j]]))
    return IrrepMatrices(group=s3, degrees=(1, 2, 1),
                         matrices=(tuple(sign_m), tuple(std_m),
                                   tuple(triv_m)),
                         labels=("sign", "standard", "trivial"))


def test_s3_exact_theta():
    spec = s3_spec()
    table = symmetric_character_table(3)
    cert = solve_theta(spec, table)
    assert cert.exact
    assert cert.objective == 2
    # multiplicities in (sign, standard, trivial) order
    assert cert.a == (Fraction(0), Fraction(1), Fraction(2))
    assert validate_certificate(cert) == []
    # matches the independence number of this 6-vertex graph
    assert alpha(build_cayley(spec.group, spec.connection)).value == 2


def test_lp_D_shape_s3():
    lp = build_lp_D(s3_spec(), symmetric_character_table(3))
    assert lp.instance.n == 3
    assert lp.row_labels[0] == "normalization"
    assert lp.instance.b[0] == 6
    assert len(lp.kept_classes) == 1


def test_wrong_formulation_raises():
    s3 = make_symmetric(3)
    t = next(g for g in range(6) if s3.perm(g) == (1, 0, 2))
    spec = CayleyGraphSpec(s3, ConnectionSet.from_elements(s3, [t]))
    with pytest.raises(WrongFormulation):
        build_lp_D(spec, symmetric_character_table(3))


def test_cycle_5_float_theta():
    z5 = make_abelian_product([5])
    spec = CayleyGraphSpec(z5, ConnectionSet.from_elements(z5, [1, 4]))
    cert = solve_theta(spec, abelian_character_table(z5))
    assert not cert.exact
    assert abs(cert.objective - math.sqrt(5)) < 1e-9
    assert validate_certificate(cert) == []


def test_cycle_7_float_theta():
    z7 = make_abelian_product([7])
    spec = CayleyGraphSpec(z7, ConnectionSet.from_elements(z7, [1, 6]))
    cert = solve_theta(spec, abelian_character_table(z7))
    c = math.cos(math.pi / 7)
    assert abs(cert.objective - 7 * c / (1 + c)) < 1e-9


def test_klein_four_cycle_exact():
    # Cay(Z2 x Z2, {(0,1),(1,0)}) is the 4-cycle: theta = alpha = 2
    k4 = make_abelian_product([2, 2])
    spec = CayleyGraphSpec(k4, ConnectionSet.from_elements(k4, [1, 2]))
    cert = solve_theta(spec, abelian_character_table(k4))
    assert cert.exact
    assert cert.objective == 2


def test_theta_bounds_alpha():
    # theta is sandwiched: alpha <= theta for several Cayley graphs
    for n, cls in ((4, [1]), (4, [3]), (5, [1]), (5, [2])):
        sn = make_symmetric(n)
        spec = CayleyGraphSpec(sn, ConnectionSet.from_classes(sn, cls))
        cert = solve_theta(spec, symmetric_character_table(n))
        if sn.order <= 200:
            a = alpha(build_cayley(sn, spec.connection)).value
            assert Fraction(a) <= cert.objective


def test_certificate_matrix_roundtrip():
    spec = s3_spec()
    cert = solve_theta(spec, symmetric_character_table(3))
    A = extract_matrix_solution(cert)
    order = spec.group.order
    # PSD, trace 1, entry sum = theta, zero on edges
    ok, _ = exact_psd(A)
    assert ok
    assert sum(A[i][i] for i in range(order)) == 1
    assert sum(sum(row) for row in A) == cert.objective
    g = build_cayley(spec.group, spec.connection)
    for (u, v) in g.edges:
        assert A[u][v] == 0
    # symmetrization is a fixed point and recovers f
    f = symmetrize_matrix(A, spec.group)
    for gamma in range(order):
        assert f.values[gamma] == cert.f.at_element(gamma)


def test_certificate_json():
    cert = solve_theta(s3_spec(), symmetric_character_table(3))
    data = json.loads(certificate_to_json(cert))
    assert data["exact"] is True
    assert Fraction(data["theta"]) == cert.objective


def test_build_sdp_A_structure(tmp_path):
    z5 = make_abelian_product([5])
    spec = CayleyGraphSpec(z5, ConnectionSet.from_elements(z5, [1, 4]))
    sdp = build_sdp_A(spec)
    assert sdp.block_sizes == (5,)
    assert len(sdp.constraints) == 1 + 5       # trace + one per edge

    spec3 = s3_spec()
    sdp3 = build_sdp_A(spec3)
    assert sdp3.block_sizes == (6,)
    assert len(sdp3.constraints) == 1 + 6

    path = tmp_path / "a.dat-s"
    export_sdpa(sdp3, path)
    back = read_sdpa(path)
    assert back == sdp3


def test_build_sdp_C_s3(tmp_path):
    spec = s3_spec()
    sdp = build_sdp_C(spec, s3_irreps())
    assert sdp.block_sizes == (1, 2, 1)
    # normalization + one row for the single inverse-closed element pair
    assert len(sdp.constraints) == 2
    assert sdp.constraints[0][1] == 6.0
    path = tmp_path / "c.dat-s"
    export_sdpa(sdp, path)
    assert read_sdpa(path) == sdp


def test_build_sdp_C_z5_matches_lp_rows():
    z5 = make_abelian_product([5])
    spec = CayleyGraphSpec(z5, ConnectionSet.from_elements(z5, [1, 4]))
    table = abelian_character_table(z5)
    sdp = build_sdp_C(spec, abelian_irreps(table))
    assert sdp.block_sizes == (1, 1, 1, 1, 1)
    lp = build_lp_D(spec, table)
    assert len(sdp.constraints) == lp.instance.m


def test_sdp_C_works_for_non_closed_sets(tmp_path):
    # formulation (C) must accept connection sets that (D) rejects
    s3 = make_symmetric(3)
    t = next(g for g in range(6) if s3.perm(g) == (1, 0, 2))
    spec = CayleyGraphSpec(s3, ConnectionSet.from_elements(s3, [t]))
    sdp = build_sdp_C(spec, s3_irreps())
    assert len(sdp.constraints) >= 2
    path = tmp_path / "nc.dat-s"
    export_sdpa(sdp, path)
    assert read_sdpa(path) == sdp
