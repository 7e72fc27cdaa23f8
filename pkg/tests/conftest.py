"""공용 픽스처 — tests/fixtures/*.json 입력 문서 로더"""
import json
import os

import pytest

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, f"{name}.json")


@pytest.fixture
def load():
    """load("foschi") → LoadedInput"""
    from spheromo.core.data.document import load_input

    def _load(name: str):
        return load_input(fixture_path(name))
    return _load


@pytest.fixture
def variant(tmp_path):
    """픽스처 문서를 고쳐 tmp_path 에 저장: variant("sp6", sigma=[...]) / drop=("sigma",)"""
    def _variant(name: str, drop=(), **changes) -> str:
        with open(fixture_path(name), "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        for key in drop:
            doc.pop(key, None)
        doc.update(changes)
        path = tmp_path / f"{name}_variant.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)
    return _variant
