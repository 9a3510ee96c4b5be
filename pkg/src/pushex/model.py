from __future__ import annotations

from pathlib import Path
from typing import TypeVar

import yaml
from pydantic import ConfigDict, RootModel, TypeAdapter, ValidationError
from pydantic.dataclasses import dataclass

from .errors import ConfigError

M = TypeVar("M", bound="Model")


@dataclass(config=ConfigDict(validate_assignment=True, extra="forbid"))
class Model:
    """Base of the user-facing config and report records."""

    @classmethod
    def _pd_class(cls):
        return TypeAdapter(cls)

    @classmethod
    def json_schema(cls):
        return cls._pd_class().json_schema()

    @classmethod
    def load(cls: type[M], data: dict | str) -> M:
        """
        Validates a dict or a JSON string.

        Raises
        ------
        ConfigError
            If the data does not match the model.
        """
        try:
            if isinstance(data, str):
                return cls._pd_class().validate_json(data)
            return cls._pd_class().validate_python(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid {cls.__name__}:\n{e}") from e

    @classmethod
    def load_file(cls: type[M], path: str | Path) -> M:
        """Loads a JSON or YAML document."""
        try:
            with open(path, "r", encoding="utf-8") as file:
                data = yaml.safe_load(file)
        except FileNotFoundError as e:
            raise ConfigError(f"Configuration file not found: {path}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"Error loading configuration file: {path}\n\n{e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a mapping at the top level.")
        return cls.load(data)

    def _pd_model(self):
        return RootModel(self)

    def to_dict(self) -> dict:
        return self._pd_model().model_dump(mode="json")  # type: ignore

    def to_json(self, indent: int | None = None) -> str:
        return self._pd_model().model_dump_json(indent=indent)
