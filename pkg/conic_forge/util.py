"""
Configuration lookup: built-in defaults, then [tool.conic_forge] in
pyproject.toml, then the environment.
"""

import logging
import os.path

import attr
import toml

log = logging.getLogger(__name__)

TOL_ENV = "CONIC_FORGE_TOL"


@attr.s(frozen=True, slots=True)
class Settings:
    tol = attr.ib(default=1e-6, converter=float)
    max_rounds = attr.ib(default=4, converter=int)
    attempts = attr.ib(default=100000, converter=int)


def get_tool_config(path="pyproject.toml") -> dict:
    """The [tool.conic_forge] table of path, or {} when there is none."""
    if not os.path.exists(path):
        return {}
    with open(path, "r") as pyproject:
        project = toml.load(pyproject)

    if "tool" in project:
        tools = project["tool"]

        if "conic_forge" in tools:
            return dict(tools["conic_forge"])
    return {}


def load_settings(path="pyproject.toml", environ=None) -> Settings:
    environ = os.environ if environ is None else environ
    table = get_tool_config(path)
    values = {}
    if "tol" in table:
        values["tol"] = table["tol"]
    if "max-rounds" in table:
        values["max_rounds"] = table["max-rounds"]
    if "attempts" in table:
        values["attempts"] = table["attempts"]
    if environ.get(TOL_ENV):
        values["tol"] = environ[TOL_ENV]
        log.debug("tolerance %s from %s", environ[TOL_ENV], TOL_ENV)
    return Settings(**values)
