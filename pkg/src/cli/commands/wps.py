# src/cli/commands/wps.py
from argparse import ArgumentParser, Namespace, _SubParsersAction

from src.cli.arguments import positive_int
from src.cli.commands.base import BaseCommand, CommandResult, Handler
from src.models.base import DomainError
from src.models.toric import (
    ToricDivisor,
    anticanonical_divisor,
    anticanonical_volume,
    binomial_chi,
    gorenstein_index,
    hilbert_series,
    self_intersection,
    wps,
)


class WpsCommand(BaseCommand):
    """Weighted projective planes as toric surfaces."""

    help = "Invariants of weighted projective planes"

    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        info = actions.add_parser("info", parents=parents, help="Volume, index and fan")
        self._add_weights(info)
        info.add_argument("--emit-fan", metavar="FILE", help="Write the fan as JSON")

        hilbert = actions.add_parser(
            "hilbert", parents=parents, help="h^0(-mK) by lattice points"
        )
        self._add_weights(hilbert)
        hilbert.add_argument("--m", type=int, required=True)

    @staticmethod
    def _add_weights(parser: ArgumentParser) -> None:
        for name in ("a0", "a1", "a2"):
            parser.add_argument(name, type=positive_int)

    def handlers(self) -> dict[str, Handler]:
        return {"info": self._info, "hilbert": self._hilbert}

    def _info(self, args: Namespace) -> CommandResult:
        surface = wps(args.a0, args.a1, args.a2)
        data = {
            "volume": anticanonical_volume(surface, ToricDivisor.zero(surface)),
            "index": gorenstein_index(surface),
            "name": surface.name,
            "weights": [args.a0, args.a1, args.a2],
            "rays": [v.to_list() for v in surface.rays],
            "self_intersections": [
                self_intersection(surface, i) for i in range(len(surface))
            ],
        }
        if args.emit_fan:
            self.require_storage().save(args.emit_fan, surface)
        return CommandResult(
            success=True, message=f"Invariants of {surface.name}", data=data
        )

    def _hilbert(self, args: Namespace) -> CommandResult:
        surface = wps(args.a0, args.a1, args.a2)
        if args.m < 0:
            raise DomainError("bad_dilation", f"m must be >= 0, got {args.m}")
        series = hilbert_series(surface, anticanonical_divisor(surface), args.m)
        data = {"m": args.m, "h0": series[args.m], "series": series}
        if (args.a0, args.a1, args.a2) == (1, 1, 1):
            # binom(3 + m, m) differs from the lattice count and is shown for comparison
            data["binomial_chi"] = binomial_chi(args.m)
        return CommandResult(
            success=True, message=f"h^0(-{args.m}K) on {surface.name}", data=data
        )
