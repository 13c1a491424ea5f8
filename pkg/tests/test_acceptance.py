"""Acceptance suite: every criterion must pass at exact equality.

Each test prints its one-line PASS/FAIL verdict (run pytest with -s to see
them); `closure-lab verify-paper` prints the same lines.
"""

import pytest

from closurelab import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA,
                         ids=[f"criterion_{fn.number:02d}"
                              for fn in acceptance.CRITERIA])
def test_acceptance_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.detail
