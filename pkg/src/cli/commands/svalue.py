# src/cli/commands/svalue.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import int_pair, rational
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.base import as_rational
from src.models.toric import ToricDivisor, ToricValuation, wps
from src.models.valuations import (
    CurveThroughCenter,
    Frame,
    MonomialWeight,
    WeightedBlowupData,
    parse_curve,
    s_conic_line,
    s_of_monomial_weight,
    s_of_plane_curve,
    s_pipeline,
    s_toric_report,
)


class SValueCommand(BaseCommand):
    """S-invariants of valuations on P^2 and on toric surfaces."""

    help = "S-invariants of valuations"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        toric = actions.add_parser("toric", parents=parents, help="Toric valuation")
        toric.add_argument("--wx", type=rational, required=True)
        toric.add_argument("--wy", type=rational, required=True)
        toric.add_argument("--fan", metavar="FILE", help="Fan file (default P^2)")
        toric.add_argument(
            "--delta", help="Comma-separated boundary coefficients, one per ray"
        )

        conic = actions.add_parser(
            "conic-line", parents=parents, help="v_t in the conic-line frame"
        )
        conic.add_argument("--t", type=rational, required=True)

        pipeline = actions.add_parser(
            "pipeline", parents=parents, help="Weighted blowup threshold pipeline"
        )
        pipeline.add_argument("--weights", type=int_pair, required=True, metavar="a,b")
        pipeline.add_argument("--curve-deg", type=int, required=True)
        pipeline.add_argument("--ord", type=rational, required=True)
        pipeline.add_argument(
            "--curve",
            action="append",
            default=[],
            metavar="NAME:DEG:ORD",
            help="Further curves through the center",
        )

        plane = actions.add_parser(
            "plane-curve", parents=parents, help="ord_C for a plane curve of degree e"
        )
        plane.add_argument("--curve-deg", type=int, required=True)

        monomial = actions.add_parser(
            "monomial", parents=parents, help="Monomial valuation with weights (a, b)"
        )
        monomial.add_argument("--a", type=rational, required=True)
        monomial.add_argument("--b", type=rational, required=True)
        monomial.add_argument(
            "--frame",
            choices=[Frame.STANDARD_TORIC, Frame.CONIC_LINE],
            default=Frame.STANDARD_TORIC,
        )

    def handlers(self) -> dict[str, Handler]:
        return {
            "toric": self._toric,
            "conic-line": self._conic_line,
            "pipeline": self._pipeline,
            "plane-curve": self._plane_curve,
            "monomial": self._monomial,
        }

    def _toric(self, args: Namespace) -> CommandResult:
        surface = self.load_fan(args.fan) if args.fan else wps(1, 1, 1, name="P^2")
        boundary = (
            ToricDivisor.of([as_rational(c) for c in args.delta.split(",")])
            if args.delta
            else ToricDivisor.zero(surface)
        )
        report = s_toric_report(surface, boundary, ToricValuation((args.wx, args.wy)))
        return CommandResult(
            success=True, message=f"S = {report.S}", data=report.to_dict()
        )

    def _conic_line(self, args: Namespace) -> CommandResult:
        value = s_conic_line(args.t)
        return CommandResult(
            success=True, message=f"S(v_{args.t}) = {value}", data={"S": value}
        )

    def _pipeline(self, args: Namespace) -> CommandResult:
        a, b = args.weights
        curves = (
            CurveThroughCenter("C", args.curve_deg, args.ord),
            *(parse_curve(text) for text in args.curve),
        )
        report = s_pipeline(WeightedBlowupData(a, b, curves))
        return CommandResult(
            success=True,
            message=f"S(ord_E) = {report.S} via {report.route}",
            data=report.to_dict(),
        )

    def _plane_curve(self, args: Namespace) -> CommandResult:
        value = s_of_plane_curve(args.curve_deg)
        return CommandResult(
            success=True,
            message=f"S(ord_C) = {value}",
            data={"e": args.curve_deg, "S": value},
        )

    def _monomial(self, args: Namespace) -> CommandResult:
        report = s_of_monomial_weight(MonomialWeight(args.a, args.b, args.frame))
        return CommandResult(
            success=True, message=f"S = {report.S}", data=report.to_dict()
        )
