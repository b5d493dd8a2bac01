# src/cli/commands/typeii.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import frac_spec, lattice_vector, rational
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.cy_pairs import (
    TypeIIRecord,
    case_iii_values,
    elliptic_cone_record,
    typeII_case_ii_enumerate,
    typeII_case_iv_enumerate,
)


def _records(records: list[TypeIIRecord], label: str) -> CommandResult:
    return CommandResult(
        success=True,
        message=f"{len(records)} {label} solutions",
        data=[r.to_dict() for r in records],
    )


class TypeIICommand(BaseCommand):
    """Diophantine enumeration of Type II polystable pairs."""

    help = "Type II boundary polarized CY surface pairs"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        case_ii = actions.add_parser(
            "case-ii", parents=parents, help="Orbifold cones of volume 9"
        )
        case_ii.add_argument("--s", type=rational, required=True, help="deg L_orb")
        case_ii.add_argument("--fracs", type=frac_spec, metavar="SPEC")

        case_iv = actions.add_parser(
            "case-iv", parents=parents, help="Two cones glued along a curve"
        )
        case_iv.add_argument("--sigma", type=rational)
        case_iv.add_argument("--fracs", type=frac_spec, default=[], metavar="SPEC")
        case_iv.add_argument("--vary-numerators", action="store_true")

        case_iii = actions.add_parser(
            "case-iii-check", parents=parents, help="Numerical identity of case (iii)"
        )
        case_iii.add_argument("--fan", metavar="FILE", required=True)
        case_iii.add_argument(
            "--ray", type=lattice_vector, required=True, metavar="x,y"
        )
        case_iii.add_argument("--degdelta", type=rational, required=True)

        actions.add_parser("elliptic", parents=parents, help="The elliptic cone")

    def handlers(self) -> dict[str, Handler]:
        return {
            "case-ii": self._case_ii,
            "case-iv": self._case_iv,
            "case-iii-check": self._case_iii,
            "elliptic": self._elliptic,
        }

    def _case_ii(self, args: Namespace) -> CommandResult:
        fracs = [f for _, f in args.fracs] if args.fracs is not None else None
        return _records(typeII_case_ii_enumerate(args.s, fracs), "case (ii)")

    def _case_iv(self, args: Namespace) -> CommandResult:
        records = typeII_case_iv_enumerate(
            [f for _, f in args.fracs],
            args.sigma,
            vary_numerators=args.vary_numerators,
        )
        return _records(records, "case (iv)")

    def _case_iii(self, args: Namespace) -> CommandResult:
        surface = self.load_fan(args.fan)
        values = case_iii_values(surface, args.ray, args.degdelta)
        return CommandResult(
            success=True,
            message="Identity holds" if values["holds"] else "Identity fails",
            data=values,
        )

    def _elliptic(self, args: Namespace) -> CommandResult:
        return _records([elliptic_cone_record()], "elliptic cone")
