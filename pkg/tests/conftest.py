from __future__ import annotations

import pytest

from surreal.core.gameform import FormArena


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """
    Конфиг и журналы пишутся во временный HOME.
    """
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.setenv("APPDATA", str(home / "AppData" / "Roaming"))
    monkeypatch.setenv("LOCALAPPDATA", str(home / "AppData" / "Local"))
    return home


@pytest.fixture
def arena() -> FormArena:
    return FormArena()
