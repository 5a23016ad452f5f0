from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import check_prime

DEFAULT_SEED = 1


@dataclass(frozen=True)
class Caps:
    window: int = 1
    dim_cap: int = 2
    module_order_cap: int = 8
    path_len_cap: int = 8
    tr4_budget: int = 50

    def __post_init__(self):
        for name in ("dim_cap", "module_order_cap", "path_len_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.window < 0 or self.tr4_budget < 0:
            raise ValueError("window and tr4_budget must be non-negative")

    def describe(self) -> str:
        return (f"window={self.window} dim_cap={self.dim_cap} module_order_cap={self.module_order_cap} "
                f"path_len_cap={self.path_len_cap} tr4_budget={self.tr4_budget}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    p: int = 2
    caps: Caps = field(default_factory=Caps)
    seed: int = DEFAULT_SEED
    output: str | None = None
    options: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        check_prime(self.p)

    def option(self, name: str, default=None):
        return dict(self.options).get(name, default)
