"""Bundled example configurations."""

from __future__ import annotations

from importlib import resources

from .lattice import ConfigError, SurfaceConfig


def builtin_names() -> list[str]:
    root = resources.files("orbicert").joinpath("configs")
    return sorted(
        entry.name[: -len(".json")]
        for entry in root.iterdir()
        if entry.name.endswith(".json")
    )


def load_builtin(name: str) -> SurfaceConfig:
    path = resources.files("orbicert").joinpath(f"configs/{name}.json")
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ConfigError(
            f"no bundled config {name!r}; available: {', '.join(builtin_names())}"
        ) from None
    return SurfaceConfig.from_json(text)
