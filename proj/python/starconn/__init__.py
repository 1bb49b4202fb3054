"""Exact Fedosov star products, parameter families and their connections."""

from ._starconn import (
    Scenario,
    ScenarioError,
    StarProduct,
    check_catalog,
    commands,
    load_scenario,
    parse_scenario,
    report_json,
    report_text,
    run,
)

__all__ = [
    "Scenario",
    "ScenarioError",
    "StarProduct",
    "check_catalog",
    "commands",
    "load_scenario",
    "parse_scenario",
    "report_json",
    "report_text",
    "run",
]
