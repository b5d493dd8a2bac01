# src/cli/commands/markov.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import positive_int
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.cy_pairs import boundedness_table
from src.models.markov import (
    dn_sequence,
    enumerate_triples,
    markov_surface,
    special_degenerations,
)


class MarkovCommand(BaseCommand):
    """Markov triples, the d_n sequence and the catalog of degenerations of P^2."""

    help = "Markov triples and special degenerations of P^2"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        enumerate_parser = actions.add_parser(
            "enumerate", parents=parents, help="Triples with largest entry <= bound"
        )
        enumerate_parser.add_argument("--bound", type=positive_int, required=True)

        dn = actions.add_parser("dn", parents=parents, help="d_0, ..., d_n")
        dn.add_argument("--n", type=int, required=True)

        surfaces = actions.add_parser(
            "surfaces", parents=parents, help="P(a^2,b^2,c^2) volume and index"
        )
        surfaces.add_argument("--bound", type=positive_int, required=True)
        surfaces.add_argument(
            "--d",
            type=int,
            help="Compare each index with N_d for plane curves of degree d",
        )

        catalog = actions.add_parser(
            "appendixA",
            parents=parents,
            help="Special degenerations with d_{n+1} <= bound",
        )
        catalog.add_argument("--bound", type=positive_int, required=True)

    def handlers(self) -> dict[str, Handler]:
        return {
            "enumerate": self._enumerate,
            "dn": self._dn,
            "surfaces": self._surfaces,
            "appendixA": self._catalog,
        }

    def _enumerate(self, args: Namespace) -> CommandResult:
        triples = [t.to_dict() for t in enumerate_triples(args.bound)]
        return CommandResult(
            success=True,
            message=f"Found {len(triples)} Markov triples up to {args.bound}",
            data=triples,
        )

    def _dn(self, args: Namespace) -> CommandResult:
        sequence = dn_sequence(args.n)
        return CommandResult(
            success=True,
            message=f"d_0 ... d_{args.n}",
            data={"n": args.n, "d": sequence},
            rows=[{"k": k, "d_k": d} for k, d in enumerate(sequence)],
        )

    def _surfaces(self, args: Namespace) -> CommandResult:
        rows = []
        for triple in enumerate_triples(args.bound):
            report = markov_surface(triple).to_dict()
            report.pop("rays")
            rows.append(report)
        if args.d is not None:
            bounds = boundedness_table(args.bound, args.d)
            for row, extra in zip(rows, bounds, strict=True):
                row.update(N_d=extra["N_d"], exceeds_N_d=extra["exceeds_N_d"])
        return CommandResult(
            success=True,
            message=f"Markov surfaces for {len(rows)} triples",
            data=rows,
        )

    def _catalog(self, args: Namespace) -> CommandResult:
        records = [r.to_dict() for r in special_degenerations(args.bound)]
        return CommandResult(
            success=True,
            message=f"{len(records)} special degenerations of P^2",
            data=records,
        )
