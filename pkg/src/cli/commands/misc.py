# src/cli/commands/misc.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import int_list, rational
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.cy_pairs import (
    coreg0_index_bound,
    coreg_positive_guarantee,
    git_points_semistable,
    git_polystable_representative,
    index_nd,
    regularity,
    typeIII_canonical,
)


class MiscCommand(BaseCommand):
    """Index formulas, coregularity tests and GIT of points on P^1."""

    help = "Indices, coregularity and GIT of points"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        nd = actions.add_parser("nd", parents=parents, help="N_d for plane curves")
        nd.add_argument("--d", type=int, required=True)

        coreg = actions.add_parser(
            "coreg-test", parents=parents, help="Is 1 outside rZ?"
        )
        coreg.add_argument("--r", type=rational, required=True)

        typeiii = actions.add_parser(
            "typeiii", parents=parents, help="Type III canonical representative"
        )
        typeiii.add_argument("--d", type=int, required=True)

        git = actions.add_parser(
            "git-points", parents=parents, help="GIT of points on P^1"
        )
        git.add_argument("--mults", type=int_list, required=True, metavar="LIST")
        git.add_argument("--d", type=int, required=True)

        polystable = actions.add_parser(
            "git-polystable", parents=parents, help="Polystable degeneration of points"
        )
        polystable.add_argument("--d", type=int, required=True)

        index = actions.add_parser(
            "coreg0-index", parents=parents, help="Index bound lcm(lambda, 2)"
        )
        index.add_argument("--lambda", dest="lam", type=int, required=True)

        reg = actions.add_parser("regularity", parents=parents, help="dim - coreg - 1")
        reg.add_argument("--dim", type=int, required=True)
        reg.add_argument("--coreg", type=int, required=True)

    def handlers(self) -> dict[str, Handler]:
        return {
            "nd": self._nd,
            "coreg-test": self._coreg_test,
            "typeiii": self._typeiii,
            "git-points": self._git_points,
            "git-polystable": self._git_polystable,
            "coreg0-index": self._coreg0_index,
            "regularity": self._regularity,
        }

    def _nd(self, args: Namespace) -> CommandResult:
        value = index_nd(args.d)
        return CommandResult(True, f"N_{args.d} = {value}", {"d": args.d, "N_d": value})

    def _coreg_test(self, args: Namespace) -> CommandResult:
        positive = coreg_positive_guarantee(args.r)
        return CommandResult(
            True,
            "coreg > 0 guaranteed" if positive else "no guarantee",
            {"r": args.r, "coreg_positive": positive},
        )

    def _typeiii(self, args: Namespace) -> CommandResult:
        record = typeIII_canonical(args.d)
        return CommandResult(
            True, f"Type III representative for d={args.d}", record.to_dict()
        )

    def _git_points(self, args: Namespace) -> CommandResult:
        state = git_points_semistable(args.mults, args.d)
        data = {"mults": args.mults, "d": args.d, "state": state}
        return CommandResult(True, state, data)

    def _git_polystable(self, args: Namespace) -> CommandResult:
        representative = git_polystable_representative(args.d)
        return CommandResult(
            True,
            "no strictly semistable points" if representative is None else "polystable",
            {"d": args.d, "representative": representative},
        )

    def _coreg0_index(self, args: Namespace) -> CommandResult:
        value = coreg0_index_bound(args.lam)
        data = {"lambda": args.lam, "index": value}
        return CommandResult(True, f"lambda' = {value}", data)

    def _regularity(self, args: Namespace) -> CommandResult:
        reg, label = regularity(args.dim, args.coreg)
        data = {"dim": args.dim, "coreg": args.coreg, "reg": reg, "type": label}
        return CommandResult(True, label or f"reg = {reg}", data)
