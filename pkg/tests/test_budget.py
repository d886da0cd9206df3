import time

import pytest

from char3link.budget import BudgetExceeded, budget, checkpoint


def test_unlimited():
    with budget(None):
        checkpoint()


def test_expired_budget_raises():
    with pytest.raises(BudgetExceeded):
        with budget(0):
            time.sleep(0.001)
            checkpoint()


def test_budget_is_restored_on_exit():
    with pytest.raises(BudgetExceeded):
        with budget(0):
            time.sleep(0.001)
            checkpoint()
    checkpoint()


def test_nested_budgets():
    with budget(60):
        with pytest.raises(BudgetExceeded):
            with budget(0):
                time.sleep(0.001)
                checkpoint()
        checkpoint()
