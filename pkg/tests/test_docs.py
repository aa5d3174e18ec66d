"""The file-format examples in the README parse and verify."""
import re
from pathlib import Path

import pytest

from homalg.cli import verify_structure
from homalg.structfile import parse_structure

README = Path(__file__).resolve().parent.parent / "README.md"
BLOCKS = [b for b in re.findall(r"```yaml\n(.*?)```", README.read_text(encoding="utf-8"), re.S)
          if b.startswith("kind:")]


def test_every_kind_has_an_example():
    kinds = {parse_structure(b).kind for b in BLOCKS}
    assert kinds == {"homlie", "bialgebra", "algebroid", "poisson", "bialgebroid", "courant"}


@pytest.mark.parametrize("block", BLOCKS, ids=[f"example{i + 1}" for i in range(len(BLOCKS))])
def test_readme_example_verifies(block):
    rep = verify_structure(parse_structure(block), 2, identities=False)
    assert rep.passed, str(rep)
