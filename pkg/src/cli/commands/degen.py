# src/cli/commands/degen.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import positive_int, rational, valuation_list
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.base import as_rational
from src.models.filtrations import (
    FiltrationTable,
    central_fiber_hilbert,
    filtration_by_plane_curve,
    finite_generation_degree,
    is_flat,
    monomial_lc_filtration,
)
from src.models.toric import ToricDivisor


class DegenCommand(BaseCommand):
    """Filtrations of section rings and their Rees degenerations."""

    help = "Filtration tables and flatness checks"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        filtration = actions.add_parser(
            "filtration", parents=parents, help="Order of vanishing along a plane curve"
        )
        filtration.add_argument("--curve-deg", type=int, required=True)
        filtration.add_argument("--mmax", type=positive_int)

        monomial = actions.add_parser(
            "monomial", parents=parents, help="Filtration cut out by toric valuations"
        )
        monomial.add_argument("--fan", metavar="FILE", required=True)
        monomial.add_argument(
            "--weights", type=valuation_list, default=[], metavar="LIST"
        )
        monomial.add_argument("--r", type=rational, default=1)
        monomial.add_argument("--mmax", type=positive_int)
        monomial.add_argument("--delta", help="Comma-separated boundary coefficients")

    def handlers(self) -> dict[str, Handler]:
        return {"filtration": self._filtration, "monomial": self._monomial}

    @staticmethod
    def _result(table: FiltrationTable) -> CommandResult:
        degree = finite_generation_degree(table)
        data = {
            **table.to_dict(),
            "central_fiber_hilbert": {
                str(m): h for m, h in central_fiber_hilbert(table).items()
            },
            "flat": is_flat(table),
            "finite_generation_degree": "not_detected" if degree is None else degree,
        }
        return CommandResult(
            success=True, message=table.description, data=data, rows=table.rows()
        )

    def _filtration(self, args: Namespace) -> CommandResult:
        table = filtration_by_plane_curve(args.curve_deg, self.resolve_mmax(args))
        return self._result(table)

    def _monomial(self, args: Namespace) -> CommandResult:
        surface = self.load_fan(args.fan)
        boundary = (
            ToricDivisor.of([as_rational(c) for c in args.delta.split(",")])
            if args.delta
            else ToricDivisor.zero(surface)
        )
        table = monomial_lc_filtration(
            surface, boundary, args.weights, args.r, self.resolve_mmax(args)
        )
        return self._result(table)
