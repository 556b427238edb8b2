"""Bundled presentation and morphism files used by the test suite and docs."""

from importlib import resources


def names() -> list:
    out = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith((".dga", ".map")):
            out.append(entry.name)
    return sorted(out)


def read(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def path(name: str) -> str:
    with resources.as_file(resources.files(__name__).joinpath(name)) as p:
        return str(p)
