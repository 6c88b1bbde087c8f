from fractions import Fraction

import pytest

from lagdef.complexes import ComplexEngine
from lagdef.families import (
    conormal_variety,
    plane_curve_variety,
    product_with_line,
)
from lagdef.pipeline import (
    ClassPencil,
    ConnectionData,
    PipelineError,
    check_first_order,
    choose_t,
    connection_kernel_cokernel,
    decomposition_oracle,
    lt_report,
    milnor_number,
    obstruction,
    split_torsion_free,
    stratify,
)
from lagdef.ring import WeightedRing
from lagdef.symplectic import LagrangianVariety, PoissonStructure

SIGMA2 = WeightedRing(["A", "B", "C", "D"], [2, 3, 4, 5])
PS = PoissonStructure(SIGMA2, [("A", "D", 3), ("C", "B", 1)])
SIGMA2_GENS = [
    SIGMA2.parse("-27*B^2*C+96*A*C^2-45*A*B*D+1125*D^2"),
    SIGMA2.parse("81*B^3-288*A*B*C+405*A^2*D-900*C*D"),
    SIGMA2.parse("-45*A*B^2+135*A^2*C-300*C^2+1125*B*D"),
]


@pytest.fixture(scope="module")
def sigma2():
    return LagrangianVariety(PS, SIGMA2_GENS, "sigma2")


@pytest.fixture(scope="module")
def sigma2_report(sigma2):
    return lt_report(sigma2, bound=30)


class TestStratify:
    def test_sigma2_three_strata(self, sigma2):
        rep = stratify(sigma2)
        assert rep.condition_p
        dims = {s.k: s.dimension for s in rep.strata}
        assert dims[0] == 0 and dims[1] == 1 and dims[2] == 2

    def test_smooth_line(self):
        R = WeightedRing(["x", "y"], [1, 1])
        P = PoissonStructure(R, [("x", "y", 1)])
        rep = stratify(LagrangianVariety(P, [R.parse("x")]))
        assert rep.condition_p
        assert rep.strata[0].dimension == -1  # rank-zero locus is empty

    def test_plane_cusp(self):
        rep = stratify(plane_curve_variety("y^2-x^3"))
        assert rep.condition_p
        assert rep.strata[0].dimension == 0  # the origin has full embedding dim


class TestChooseT:
    def test_sigma2_picks_lowest_weight(self, sigma2):
        t, _ = choose_t(sigma2)
        assert str(t) == "A"

    def test_override_accepts_any_finite_variable(self, sigma2):
        # every coordinate is nonzero along the singular cusp of the
        # swallowtail, so even D is admissible
        t, _ = choose_t(sigma2, SIGMA2.parse("D"))
        assert str(t) == "D"

    def test_override_rejected_when_not_finite(self, sigma2):
        # an element of the ideal vanishes on the singular locus
        with pytest.raises(PipelineError, match="not finite"):
            choose_t(sigma2, SIGMA2_GENS[0])


class TestSplit:
    def test_sigma2_rank_four(self, sigma2):
        sp = split_torsion_free(sigma2, bound=24)
        assert sp.free_rank == (4, 4)
        assert sp.torsion_dims == ({}, {})
        eng = ComplexEngine(sigma2)
        assert sp.verify_block_structure(eng)

    def test_cuspidal_edge_rank_is_milnor(self):
        edge = product_with_line(plane_curve_variety("y^2-x^3"))
        sp = split_torsion_free(edge, bound=20)
        assert sp.free_rank == (2, 2)
        assert milnor_number(plane_curve_variety("y^2-x^3").generators[0]) == 2

    def test_quintic_lines_all_torsion(self):
        V, _ = conormal_variety("x*y*(x+y)*(x-y)*(x-2*y)")
        sp = split_torsion_free(V, bound=24)
        assert sp.free_rank == (0, 0)
        tor1, tor2 = sp.torsion_dims
        assert sum(tor1.values()) > 0 and sum(tor2.values()) > 0


class TestConnection:
    def test_sigma2_spectrum(self, sigma2_report):
        conn = sigma2_report.connection
        assert conn.rank == 4
        spec = [(str(v), m) for v, m in conn.spectrum()]
        assert spec == [("4/5", 1), ("13/10", 1), ("11/5", 1), ("27/10", 1)]
        blocks = conn.residue_matrix()
        assert blocks is not None and sum(len(b) for b in blocks) == 4

    def test_rank_one_toy(self):
        # operator t d/dt + c on a free rank-one module
        c = Fraction(3, 2)
        pencil = ClassPencil(0, 0, 1, [[c]], [[Fraction(1)]], [(-c, 1)], [])
        conn = ConnectionData(None, 1, [pencil])
        assert [(v, m) for v, m in conn.spectrum()] == [(c, 1)]

    def test_kernel_cokernel_examples(self):
        one = Fraction(1)

        def conn_of(diag):
            n = len(diag)
            pencil = ClassPencil(
                0,
                0,
                n,
                [[diag[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)],
                [[one if i == j else Fraction(0) for j in range(n)] for i in range(n)],
                [(-d, 1) for d in diag],
                [],
            )
            return ConnectionData(None, 1, [pencil])

        assert connection_kernel_cokernel(conn_of([Fraction(1)])) == (0, 0)
        assert connection_kernel_cokernel(conn_of([Fraction(0)])) == (1, 1)
        assert connection_kernel_cokernel(conn_of([Fraction(-1), Fraction(2)])) == (1, 1)


class TestFirstOrder:
    def test_plane_curve_everything_is_cocycle(self):
        eng = ComplexEngine(plane_curve_variety("y^2-x^3"))
        for text in ("1", "x", "y", "x*y+3"):
            assert check_first_order(eng, (eng.ring.parse(text),))

    def test_coboundaries_are_cocycles(self, sigma2):
        eng = ComplexEngine(sigma2)
        for text in ("A", "B", "A*C+D"):
            phi = eng.delta0(SIGMA2.parse(text))
            assert check_first_order(eng, phi)

    def test_non_cocycle_detected(self, sigma2):
        eng = ComplexEngine(sigma2)
        # search a degree with C^1 strictly larger than the cocycles
        found = False
        for d in range(0, 10):
            basis = eng.cochain_basis(1, d)
            if not basis:
                continue
            cols = eng.delta_matrix(1, d)
            for vec, col in zip(basis, cols):
                if col:
                    assert not check_first_order(eng, vec)
                    found = True
                    break
            if found:
                break
        assert found


class TestObstruction:
    def test_zero_cochain(self, sigma2):
        eng = ComplexEngine(sigma2)
        zero = tuple(SIGMA2.zero() for _ in range(3))
        res = obstruction(eng, zero, degree=5)
        assert res.is_zero

    def test_plane_curve_constant(self):
        eng = ComplexEngine(plane_curve_variety("y^2-x^3"))
        res = obstruction(eng, (eng.ring.one(),), degree=-1)
        assert res.is_zero
        assert all(p.is_zero() for p in res.lift)

    def test_resonance_cocycle_second_order_lift(self):
        # the correction term in the obstruction cochain matters here: the
        # naive quadratic cochain is not delta of the returned lift, but
        # the corrected one is, and the lift passes the exact mod-eps^3
        # involutivity check
        from lagdef.families import resonance_system
        from lagdef.linalg import kernel_of_columns

        eng = ComplexEngine(resonance_system(1, 2, (0, 2, 1, 0)))
        d = 2
        basis = eng.cochain_basis(1, d)
        cols = eng.delta_matrix(1, d)
        combos = kernel_of_columns(cols)
        assert combos
        phi = [eng.ring.zero()] * eng.m
        for idx, c in combos[0].items():
            for slot in range(eng.m):
                phi[slot] = phi[slot] + c * basis[idx][slot]
        phi = tuple(eng.gb.reduce(p) for p in phi)
        res = obstruction(eng, phi, degree=d)
        assert res.is_zero and res.lift is not None

    def test_cuspidal_edge_kernel_classes_unobstructed(self):
        edge = product_with_line(plane_curve_variety("y^2-x^3"))
        eng = ComplexEngine(edge)
        checked = 0
        from lagdef.linalg import kernel_of_columns

        for d in (-1, 1):
            basis = eng.cochain_basis(1, d)
            cols = eng.delta_matrix(1, d)
            for combo in kernel_of_columns(cols):
                phi = [eng.ring.zero()] * eng.m
                for idx, c in combo.items():
                    for slot in range(eng.m):
                        phi[slot] = phi[slot] + c * basis[idx][slot]
                phi = tuple(eng.gb.reduce(p) for p in phi)
                res = obstruction(eng, phi, degree=d)
                assert res.is_zero  # consistent with LT^2 = 0
                checked += 1
        assert checked >= 2


class TestMilnor:
    @pytest.mark.parametrize(
        "text,weights,expected",
        [("y^2-x^3", (2, 3), 2), ("y^2-x^5", (2, 5), 4), ("x^2+y^2", (1, 1), 1)],
    )
    def test_values(self, text, weights, expected):
        R = WeightedRing(["x", "y"], list(weights))
        assert milnor_number(R.parse(text)) == expected

    def test_non_isolated_rejected(self):
        R = WeightedRing(["x", "y"], [1, 1])
        with pytest.raises(PipelineError, match="non-isolated"):
            milnor_number(R.parse("x^2*y^2"))


class TestReports:
    def test_sigma2_values(self, sigma2_report):
        rep = sigma2_report
        assert (rep.lt1, rep.lt2) == (0, 1)
        assert rep.certified and rep.condition_p and rep.perversity
        eig = [(str(v), m) for v, m in rep.eigenvalues]
        assert eig == [("-27/10", 1), ("-11/5", 1), ("-13/10", 1), ("-4/5", 1)]
        assert rep.symmetric_spectrum is True
        assert str(rep.t) == "A"

    def test_non_involutive_rejected(self):
        R = WeightedRing(["x", "y"], [1, 1])
        P = PoissonStructure(R, [("x", "y", 1)])
        V = LagrangianVariety(P, list(R.gens()))
        with pytest.raises(PipelineError, match="offending generator pairs: \\(0, 1\\)"):
            lt_report(V, bound=10)

    def test_inhomogeneous_rejected(self):
        R = WeightedRing(["x", "y"], [1, 1])
        P = PoissonStructure(R, [("x", "y", 1)])
        V = LagrangianVariety(P, [R.parse("x+y^2")])
        with pytest.raises(PipelineError, match="weighted-homogeneous"):
            lt_report(V, bound=10)

    def test_plane_curve_law(self):
        for text in ("y^2-x^3", "y^2-x^5", "x^2+y^2"):
            V = plane_curve_variety(text)
            rep = lt_report(V, bound=24, with_strata=False)
            assert rep.lt1 == milnor_number(V.generators[0])
            assert rep.lt2 == 0
            assert rep.eigenvalues == []


class TestDecompositionOracle:
    def test_cusp_times_line_equals_edge(self):
        curve = plane_curve_variety("y^2-x^3")
        edge = product_with_line(curve)
        same, a, b = decomposition_oracle(curve, edge, window=(-8, 10))
        assert same
        assert sum(k for k, _ in a.values()) == 2  # LT^1 = mu = 2

    def test_smooth_times_line(self):
        line = plane_curve_variety("x", weights=(1, 1))
        plane = product_with_line(line)
        same, a, b = decomposition_oracle(line, plane, window=(-6, 6))
        assert same
        assert not a  # nothing anywhere

    def test_y2x5_times_line(self):
        curve = plane_curve_variety("y^2-x^5")
        surf = product_with_line(curve)
        same, a, b = decomposition_oracle(curve, surf, window=(-8, 12))
        assert same
        assert sum(k for k, _ in a.values()) == 4
