# -*- coding: utf-8 -*-
import time

from core.thread_pool import ThreadPoolManager, VerificationTask


def _check(value, delay=0.0):
    def run():
        time.sleep(delay)
        return value <= 1.0, f"giá trị {value}", value
    return run


def test_results_keep_submission_order():
    finished = []
    manager = ThreadPoolManager(max_workers=3, task_completed=finished.append)
    tasks = [
        VerificationTask("slow", _check(0.5, delay=0.05), 1.0),
        VerificationTask("fail", _check(2.0), 1.0),
        VerificationTask("fast", _check(0.1)),
    ]
    results = manager.process_tasks(tasks)
    assert [r.name for r in results] == ["slow", "fail", "fast"]
    assert [r.success for r in results] == [True, False, True]
    assert results[0].tolerance == 1.0 and results[2].tolerance is None
    assert results[0].elapsed >= 0.05
    assert len(finished) == 3


def test_exception_becomes_failure():
    def broken():
        raise ZeroDivisionError("chia cho 0")

    messages = []
    manager = ThreadPoolManager(max_workers=2, log_message=messages.append)
    result = manager.process_tasks([VerificationTask("broken", broken, 1e-6)])[0]
    assert not result.success
    assert result.message == "ZeroDivisionError: chia cho 0"
    assert result.value is None
    assert any("broken" in message for message in messages)


def test_stop_cancels_pending_tasks():
    manager = ThreadPoolManager(max_workers=1, log_message=lambda message: None)

    def stopper():
        manager.stop()
        return True, "dừng", None

    tasks = [VerificationTask("stop", stopper)] + [
        VerificationTask(f"task{i}", _check(0.0, delay=0.01)) for i in range(3)
    ]
    results = manager.process_tasks(tasks)
    assert len(results) == 4
    assert not manager.is_running
    assert results[-1].message == "Đã hủy"
    assert not results[-1].success


def test_keyboard_interrupt_stops_pool():
    def interrupted():
        raise KeyboardInterrupt

    messages = []
    manager = ThreadPoolManager(max_workers=1, log_message=messages.append)
    tasks = [VerificationTask("ok", _check(0.5)), VerificationTask("ctrl-c", interrupted)] + [
        VerificationTask(f"task{i}", _check(0.0, delay=0.05)) for i in range(5)
    ]
    results = manager.process_tasks(tasks)
    assert len(results) == 7
    assert not manager.is_running
    assert results[0].success
    assert results[1].message == "Đã hủy"
    assert results[-1].message == "Đã hủy" and not results[-1].success
    assert any("Ctrl+C" in message for message in messages)
