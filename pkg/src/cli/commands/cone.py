# src/cli/commands/cone.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import boundary_spec, frac_spec, rational
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.cy_pairs import CurvePair, OrbifoldPolarization, cone_over_p1


class ConeCommand(BaseCommand):
    """Orbifold cones over P^1."""

    help = "Orbifold cones over P^1"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        over = actions.add_parser(
            "over-p1", parents=parents, help="Cone over (P^1, L) with boundary D"
        )
        over.add_argument("--deg", type=rational, required=True, help="deg L")
        over.add_argument(
            "--fracs", type=frac_spec, default=[], metavar="SPEC", help="label:a/b,..."
        )
        over.add_argument(
            "--boundary",
            type=boundary_spec,
            default=CurvePair(),
            metavar="SPEC",
            help="label:c,...",
        )

    def handlers(self) -> dict[str, Handler]:
        return {"over-p1": self._over_p1}

    def _over_p1(self, args: Namespace) -> CommandResult:
        polarization = OrbifoldPolarization(args.deg, tuple(args.fracs))
        report = cone_over_p1(polarization, args.boundary)
        name = report.identified_as or "no toric identification"
        return CommandResult(
            success=True,
            message=f"Cone with r = {report.r}: {name}",
            data=report.to_dict(),
        )
