# tests/test_commands.py
from argparse import Namespace
from fractions import Fraction

import pytest

from src.cli.commands.cone import ConeCommand
from src.cli.commands.degen import DegenCommand
from src.cli.commands.markov import MarkovCommand
from src.cli.commands.misc import MiscCommand
from src.cli.commands.svalue import SValueCommand
from src.cli.commands.typeii import TypeIICommand
from src.cli.commands.wps import WpsCommand
from src.models.cy_pairs import CurvePair
from src.models.lattice import LatticeVector
from src.models.toric import ToricValuation, wps
from src.models.valuations import Frame, Route

HALF = Fraction(1, 2)


class TestMarkovCommand:
    def test_enumerate(self):
        result = MarkovCommand().execute(Namespace(action="enumerate", bound=30))

        assert result.success
        assert "5 Markov triples" in result.message
        assert result.data[-1] == {"a": 2, "b": 5, "c": 29}

    def test_enumerate_bound_two(self):
        result = MarkovCommand().execute(Namespace(action="enumerate", bound=2))
        assert result.data == [{"a": 1, "b": 1, "c": 1}, {"a": 1, "b": 1, "c": 2}]

    def test_dn(self):
        result = MarkovCommand().execute(Namespace(action="dn", n=3))

        assert result.data == {"n": 3, "d": [1, 1, 2, 5]}
        assert result.rows[3] == {"k": 3, "d_k": 5}

    def test_dn_negative(self):
        result = MarkovCommand().execute(Namespace(action="dn", n=-2))
        assert not result.success
        assert result.code is not None

    def test_surfaces_without_rays(self):
        result = MarkovCommand().execute(Namespace(action="surfaces", bound=2, d=None))

        assert [row["weights"] for row in result.data] == [[1, 1, 1], [1, 1, 4]]
        assert all("rays" not in row for row in result.data)
        assert result.data[1]["index"] == 2  # noqa: PLR2004

    def test_surfaces_against_nd(self):
        result = MarkovCommand().execute(Namespace(action="surfaces", bound=5, d=6))

        assert [row["N_d"] for row in result.data] == [2, 2, 2]
        assert [row["exceeds_N_d"] for row in result.data] == [False, False, True]

    def test_catalog(self):
        result = MarkovCommand().execute(Namespace(action="appendixA", bound=5))

        assert result.success
        kinds = [r["kind"] for r in result.data]
        assert kinds == ["plane", "wps", "wps", "hypersurface"]


class TestWpsCommand:
    def test_info(self, memory_storage):
        cmd = WpsCommand(memory_storage)
        result = cmd.execute(Namespace(action="info", a0=1, a1=4, a2=25, emit_fan=None))

        assert result.success
        assert result.data["volume"] == 9  # noqa: PLR2004
        assert result.data["index"] == 10  # noqa: PLR2004
        assert result.data["name"] == "P(1,4,25)"

    def test_info_p114(self, memory_storage):
        cmd = WpsCommand(memory_storage)
        result = cmd.execute(Namespace(action="info", a0=1, a1=1, a2=4, emit_fan=None))

        assert result.data["volume"] == 9  # noqa: PLR2004
        assert result.data["index"] == 2  # noqa: PLR2004
        assert result.data["rays"] == [[4, -1], [0, 1], [-1, 0]]

    def test_emit_fan(self, memory_storage):
        cmd = WpsCommand(memory_storage)
        cmd.execute(Namespace(action="info", a0=1, a1=1, a2=4, emit_fan="p114.json"))

        assert memory_storage.exists("p114.json")
        assert memory_storage.load("p114.json") == wps(1, 1, 4)

    def test_emit_fan_needs_storage(self):
        result = WpsCommand().execute(
            Namespace(action="info", a0=1, a1=1, a2=1, emit_fan="fan.json")
        )
        assert not result.success
        assert result.code == "storage_error"

    def test_not_well_formed(self, memory_storage):
        result = WpsCommand(memory_storage).execute(
            Namespace(action="info", a0=2, a1=2, a2=1, emit_fan=None)
        )

        assert not result.success
        assert result.code == "not_well_formed"

    def test_hilbert(self):
        args = Namespace(action="hilbert", a0=1, a1=1, a2=1, m=2)
        result = WpsCommand().execute(args)

        assert result.data["h0"] == 28  # noqa: PLR2004
        assert result.data["series"] == [1, 10, 28]
        assert result.data["binomial_chi"] == 10  # noqa: PLR2004

    def test_hilbert_negative_dilation(self):
        args = Namespace(action="hilbert", a0=1, a1=1, a2=4, m=-1)
        result = WpsCommand().execute(args)
        assert result.code == "bad_dilation"


class TestSValueCommand:
    def test_toric_on_plane(self):
        one = Fraction(1)
        args = Namespace(action="toric", wx=one, wy=one, fan=None, delta=None)
        result = SValueCommand().execute(args)

        assert result.data["S"] == 2  # noqa: PLR2004
        assert result.data["route"] == Route.TORIC_INTEGRAL

    def test_toric_swapped_weights(self):
        cmd = SValueCommand()
        values = [
            cmd.execute(
                Namespace(action="toric", wx=wx, wy=wy, fan=None, delta=None)
            ).data["S"]
            for wx, wy in ((Fraction(1), Fraction(2)), (Fraction(2), Fraction(1)))
        ]
        assert values == [3, 3]

    def test_toric_with_fan_file(self, memory_storage):
        memory_storage.save("p114.json", wps(1, 1, 4))
        result = SValueCommand(memory_storage).execute(
            Namespace(
                action="toric",
                wx=Fraction(1),
                wy=Fraction(0),
                fan="p114.json",
                delta=None,
            )
        )
        assert result.success

    def test_toric_missing_fan(self, memory_storage):
        result = SValueCommand(memory_storage).execute(
            Namespace(action="toric", wx=1, wy=1, fan="missing.json", delta=None)
        )
        assert not result.success
        assert "not found" in result.message

    def test_toric_with_boundary(self):
        result = SValueCommand().execute(
            Namespace(
                action="toric",
                wx=Fraction(1),
                wy=Fraction(0),
                fan=None,
                delta="0,0,1/2",
            )
        )
        assert result.data["S"] == Fraction(5, 6)

    def test_conic_line(self):
        args = Namespace(action="conic-line", t=Fraction(1, 4))
        result = SValueCommand().execute(args)
        assert result.data == {"S": 1}

    def test_pipeline(self):
        result = SValueCommand().execute(
            Namespace(
                action="pipeline",
                weights=(4, 1),
                curve_deg=2,
                ord=Fraction(4),
                curve=[],
            )
        )

        assert result.data["S"] == 4  # noqa: PLR2004
        assert result.data["T"] == 6  # noqa: PLR2004
        assert result.data["route"] == Route.THRESHOLD_FORMULA

    def test_pipeline_extra_curves(self):
        result = SValueCommand().execute(
            Namespace(
                action="pipeline",
                weights=(4, 1),
                curve_deg=1,
                ord=Fraction(1),
                curve=["Q:2:4"],
            )
        )
        assert result.data["intermediates"]["certificate"] == "Q"

    def test_plane_curve(self):
        result = SValueCommand().execute(Namespace(action="plane-curve", curve_deg=3))
        assert result.data == {"e": 3, "S": Fraction(1, 3)}

    def test_plane_curve_out_of_range(self):
        result = SValueCommand().execute(Namespace(action="plane-curve", curve_deg=5))
        assert result.code == "not_plurianticanonical"

    def test_monomial(self):
        result = SValueCommand().execute(
            Namespace(
                action="monomial",
                a=Fraction(2),
                b=Fraction(1),
                frame=Frame.CONIC_LINE,
            )
        )
        assert result.data["S"] == 3  # noqa: PLR2004


class TestDegenCommand:
    def test_filtration(self):
        result = DegenCommand().execute(
            Namespace(action="filtration", curve_deg=2, mmax=2)
        )

        assert result.success
        assert result.data["flat"] is True
        assert result.data["central_fiber_hilbert"] == {"1": 6, "2": 15}
        assert result.data["finite_generation_degree"] == 1
        gr = [row["gr_dim"] for row in result.rows if row["m"] == 2]  # noqa: PLR2004
        assert gr == [9, 5, 1]

    def test_cubic_generation_not_detected(self):
        result = DegenCommand().execute(
            Namespace(action="filtration", curve_deg=3, mmax=2)
        )
        assert result.data["finite_generation_degree"] == "not_detected"

    def test_mmax_from_environment(self, monkeypatch):
        monkeypatch.setenv("CYCONE_MMAX", "3")
        result = DegenCommand().execute(
            Namespace(action="filtration", curve_deg=1, mmax=None)
        )
        assert result.data["m_max"] == 3  # noqa: PLR2004

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv("CYCONE_MMAX", "many")
        result = DegenCommand().execute(
            Namespace(action="filtration", curve_deg=1, mmax=None)
        )
        assert result.code == "bad_config"

    def test_monomial(self, memory_storage, plane):
        memory_storage.save("plane.json", plane)
        result = DegenCommand(memory_storage).execute(
            Namespace(
                action="monomial",
                fan="plane.json",
                weights=[ToricValuation.of(1, 1)],
                r=Fraction(1),
                mmax=2,
                delta=None,
            )
        )

        assert result.data["ambient"] == {"1": 10, "2": 28}
        assert result.data["flat"] is True


class TestConeCommand:
    def test_plane(self):
        result = ConeCommand().execute(
            Namespace(action="over-p1", deg=Fraction(1), fracs=[], boundary=CurvePair())
        )

        assert result.data["r"] == 2  # noqa: PLR2004
        assert result.data["volume_antiK"] == 9  # noqa: PLR2004
        assert result.data["identified_as"] == "P^2"

    def test_degree_four(self):
        result = ConeCommand().execute(
            Namespace(action="over-p1", deg=Fraction(4), fracs=[], boundary=CurvePair())
        )

        assert result.data["r"] == HALF
        assert result.data["volume_antiK"] == 9  # noqa: PLR2004
        assert result.data["identified_as"] == "P(1,1,4)"

    def test_half_point_is_not_a_degeneration(self):
        result = ConeCommand().execute(
            Namespace(
                action="over-p1",
                deg=HALF,
                fracs=[("p0", HALF)],
                boundary=CurvePair.of({"p0": HALF}),
            )
        )

        assert result.data["r"] == 3  # noqa: PLR2004
        assert result.data["volume_antiK"] == 8  # noqa: PLR2004
        assert result.data["p2_degeneration"] is False

    def test_not_log_fano(self):
        result = ConeCommand().execute(
            Namespace(
                action="over-p1",
                deg=Fraction(2),
                fracs=[(f"p{i}", HALF) for i in range(4)],
                boundary=CurvePair(),
            )
        )
        assert result.code == "not_log_fano"


class TestTypeIICommand:
    def test_case_ii_integral(self):
        args = Namespace(action="case-ii", s=Fraction(0), fracs=None)
        result = TypeIICommand().execute(args)

        pairs = {(r["r"], r["deg_L"]) for r in result.data}
        assert pairs == {(Fraction(2), Fraction(1)), (HALF, Fraction(4))}
        assert {r["identified_as"] for r in result.data} == {"P^2", "P(1,1,4)"}

    @pytest.mark.parametrize("s", [HALF, Fraction(1)])
    def test_case_ii_irrational(self, s):
        result = TypeIICommand().execute(Namespace(action="case-ii", s=s, fracs=None))
        assert result.success
        assert result.data == []

    def test_case_iv(self):
        result = TypeIICommand().execute(
            Namespace(
                action="case-iv",
                sigma=None,
                fracs=[("p0", HALF)],
                vary_numerators=False,
            )
        )

        assert len(result.data) == 1
        assert (result.data[0]["t1"], result.data[0]["t2"]) == (HALF, HALF)

    @pytest.mark.parametrize("fracs", [[], [("p0", Fraction(1, 3))]])
    def test_case_iv_empty(self, fracs):
        result = TypeIICommand().execute(
            Namespace(action="case-iv", sigma=None, fracs=fracs, vary_numerators=False)
        )
        assert result.data == []

    def test_case_iii_check(self, memory_storage, plane):
        memory_storage.save("plane.json", plane)
        cmd = TypeIICommand(memory_storage)

        holds = cmd.execute(
            Namespace(
                action="case-iii-check",
                fan="plane.json",
                ray=LatticeVector(1, 1),
                degdelta=Fraction(0),
            )
        )
        fails = cmd.execute(
            Namespace(
                action="case-iii-check",
                fan="plane.json",
                ray=LatticeVector(1, 1),
                degdelta=HALF,
            )
        )

        assert holds.data["holds"] is True
        assert holds.data["A"] == 2  # noqa: PLR2004
        assert holds.data["E_sq"] == -1
        assert fails.data["holds"] is False

    def test_elliptic(self):
        result = TypeIICommand().execute(Namespace(action="elliptic"))
        record = result.data[0]
        assert record["case"] == "elliptic_cone"
        assert record["deg_L"] == 9  # noqa: PLR2004


class TestMiscCommand:
    @pytest.mark.parametrize(("d", "nd"), [(3, 1), (4, 4), (6, 2)])
    def test_nd(self, d, nd):
        result = MiscCommand().execute(Namespace(action="nd", d=d))
        assert result.data == {"d": d, "N_d": nd}

    def test_nd_too_small(self):
        assert not MiscCommand().execute(Namespace(action="nd", d=2)).success

    @pytest.mark.parametrize(
        ("r", "positive"),
        [(Fraction(3, 4), True), (HALF, False), (Fraction(1), False)],
    )
    def test_coreg_test(self, r, positive):
        result = MiscCommand().execute(Namespace(action="coreg-test", r=r))
        assert result.data["coreg_positive"] is positive

    def test_typeiii(self):
        result = MiscCommand().execute(Namespace(action="typeiii", d=3))
        assert result.data["divisor"] == "(xyz)^1"
        assert result.data["q_divisor"]["coefficient"] == 1

    def test_typeiii_excluded(self):
        result = MiscCommand().execute(Namespace(action="typeiii", d=4))
        assert result.code == "not_type_iii"

    @pytest.mark.parametrize(
        ("mults", "state"),
        [([1, 1, 1, 1], "stable"), ([2, 2], "semistable"), ([3, 1], "unstable")],
    )
    def test_git_points(self, mults, state):
        result = MiscCommand().execute(Namespace(action="git-points", mults=mults, d=4))
        assert result.data["state"] == state

    def test_git_polystable(self):
        result = MiscCommand().execute(Namespace(action="git-polystable", d=4))
        assert result.data["representative"] == [2, 2]

    @pytest.mark.parametrize(("lam", "index"), [(1, 2), (3, 6), (4, 4)])
    def test_coreg0_index(self, lam, index):
        result = MiscCommand().execute(Namespace(action="coreg0-index", lam=lam))
        assert result.data["index"] == index

    @pytest.mark.parametrize(
        ("coreg", "reg", "label"),
        [(2, -1, "Type I"), (1, 0, "Type II"), (0, 1, "Type III")],
    )
    def test_regularity(self, coreg, reg, label):
        args = Namespace(action="regularity", dim=2, coreg=coreg)
        result = MiscCommand().execute(args)
        assert result.data["reg"] == reg
        assert result.data["type"] == label
