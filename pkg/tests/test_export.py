"""Tests for CSV and JSON export."""

import json

from src.app.export import ARTIFACT, format_value, metadata_lines, to_csv, to_json
from src.app.schemas import Figure2Row, Measure


def test_format_value() -> None:
    """Test number, boolean, enum and missing formatting."""
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert format_value(Measure.FEF) == "fef"
    assert format_value(0.1 + 0.2) == "0.3"
    assert format_value(-0.0) == "0"
    assert format_value(1.23456789012345) == "1.23456789"
    assert format_value(7) == "7"


def test_metadata_lines() -> None:
    """Test the comment header describes the run."""
    lines = metadata_lines("figure2", {"d_list": [0.2, 0.4], "u_step": 0.5}, ["note"])
    assert lines == [
        "# command: figure2",
        "# parameters: d_list=0.2,0.4 u_step=0.5",
        f"# version: {ARTIFACT}",
        "# note",
    ]


def test_to_csv() -> None:
    """Test header and rows follow the model field order."""
    rows = [Figure2Row(d=0.2, u=0.0, concurrence=0.0, discord=0.0)]
    text = to_csv(rows, "figure2", {})
    lines = text.splitlines()
    assert lines[3] == "d,u,concurrence,discord"
    assert lines[4] == "0.2,0,0,0"
    assert text.endswith("\n")


def test_to_json() -> None:
    """Test the JSON envelope."""
    rows = [Figure2Row(d=0.2, u=1.0, concurrence=0.0, discord=0.0)]
    document = json.loads(to_json(rows, "figure2", {"u_step": 0.5}))
    assert document["command"] == "figure2"
    assert document["parameters"] == {"u_step": 0.5}
    assert document["version"] == ARTIFACT
    assert document["data"][0]["u"] == 1.0
