"""Size caps keeping every computation at desk scale."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "TROPSCH_CAPS"


@dataclass(frozen=True)
class Caps:
    monomials: int = 35        # |M_d| accepted by the pipeline
    circuits: int = 20         # |M_d| up to which circuits are enumerated
    exhaustive: int = 100_000  # binomial(|M_d|, r_d) up to which bases are scanned

    @classmethod
    def parse(cls, text: str, base: "Caps | None" = None) -> "Caps":
        """Read ``key=value`` pairs separated by commas or whitespace."""
        base = base or cls()
        names = {f.name for f in fields(cls)}
        updates = {}
        for item in text.replace(",", " ").split():
            key, sep, value = item.partition("=")
            key = key.strip().replace("-", "_").removeprefix("cap_")
            if not sep or key not in names:
                raise ValueError(f"bad cap setting {item!r}")
            updates[key] = int(value)
        return replace(base, **updates)

    @classmethod
    def from_env(cls) -> "Caps":
        text = os.environ.get(ENV_VAR, "")
        return cls.parse(text) if text.strip() else cls()


DEFAULT_CAPS = Caps()
