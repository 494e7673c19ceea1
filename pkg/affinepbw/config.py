# affinepbw/config.py
"""
RunConfig: everything one command run depends on.

Values come from command options first and the PBW_* settings second, so a
run is reproducible from its config alone.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path

from django.conf import settings

from .cartan import SUPPORTED_TYPES, build_type
from .convex_order import OneRowOrder
from .exceptions import ParseError
from .parsing import parse_order

COMMANDS = ("roots", "order", "pbw", "canonical", "transition", "polytope", "verify")


def _under_output_dir(value) -> Path | None:
    """Relative output paths resolve under PBW_OUTPUT_DIR."""
    if not value:
        return None
    path = Path(value)
    return path if path.is_absolute() else Path(settings.PBW_OUTPUT_DIR) / path


@dataclass(frozen=True)
class RunConfig:
    command: str
    type_tag: str
    cutoff: int
    orders: tuple = ()
    source: str = "bn:0"
    target: str = "bn:1"
    element: str | None = None
    out: Path | None = None
    svg: Path | None = None
    jobs: int = 1
    seed: int = 0
    sample_length: int = 0
    polytopes: bool = True

    @classmethod
    def from_options(cls, command: str, options: dict) -> "RunConfig":
        def _pick(key, default):
            value = options.get(key)
            return default if value is None else value

        orders = options.get("order") or ()
        if isinstance(orders, str):
            orders = (orders,)
        out = options.get("out")
        svg = options.get("svg")
        config = cls(
            command=command,
            type_tag=str(_pick("type", settings.PBW_DEFAULT_TYPE)),
            cutoff=int(_pick("cutoff", settings.PBW_HEIGHT_CUTOFF)),
            orders=tuple(orders),
            source=str(_pick("from", "bn:0")),
            target=str(_pick("to", "bn:1")),
            element=options.get("element"),
            out=_under_output_dir(out),
            svg=_under_output_dir(svg),
            jobs=int(_pick("jobs", settings.PBW_JOBS)),
            seed=int(_pick("seed", settings.PBW_SEED)),
            sample_length=int(_pick("sample_length", settings.PBW_SAMPLE_LENGTH)),
            polytopes=not options.get("skip_polytopes", False),
        )
        config.validate()
        return config

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ParseError("unknown command", command=self.command)
        if self.type_tag not in SUPPORTED_TYPES:
            raise ParseError("unsupported type tag", type=self.type_tag, supported=",".join(SUPPORTED_TYPES))
        if self.cutoff < 1:
            raise ParseError("cutoff must be at least 1", cutoff=self.cutoff)
        if self.jobs < 1:
            raise ParseError("jobs must be at least 1", jobs=self.jobs)
        if self.sample_length < 0:
            raise ParseError("sample length must be nonnegative", sample_length=self.sample_length)
        # every order spec must parse before any work starts
        self.resolve_orders()
        self.source_order()
        self.target_order()

    # --- Derived values ---

    @property
    def typ(self):
        return build_type(self.type_tag)

    def order_specs(self) -> list:
        return list(self.orders) or ["bn:0"]

    def resolve_orders(self) -> list:
        return [parse_order(spec, self.typ, self.seed) for spec in self.order_specs()]

    def order(self) -> OneRowOrder:
        return self.resolve_orders()[0]

    def source_order(self) -> OneRowOrder:
        return parse_order(self.source, self.typ, self.seed)

    def target_order(self) -> OneRowOrder:
        return parse_order(self.target, self.typ, self.seed)

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["orders"] = list(self.orders)
        payload["out"] = str(self.out) if self.out else None
        payload["svg"] = str(self.svg) if self.svg else None
        return payload
