import importlib.metadata
from typing import Final

VERSION: Final = "0.1.0"

DEPENDENCIES: Final = ("numpy", "scipy", "networkx", "pydantic", "pyyaml", "rich", "tqdm")


def get_version() -> str:
    return VERSION


def dependency_versions() -> dict[str, str]:
    """
    Returns the installed versions of the runtime dependencies.

    Missing packages are reported as "not installed".
    """
    versions = {}
    for name in DEPENDENCIES:
        try:
            versions[name] = importlib.metadata.version(name)
        except importlib.metadata.PackageNotFoundError:
            versions[name] = "not installed"
    return versions
