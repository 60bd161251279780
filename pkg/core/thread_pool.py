# -*- coding: utf-8 -*-
"""
Thread Pool Manager - Chạy song song các bài kiểm tra số học độc lập
"""

import time
import logging
from typing import Callable, List, Optional, Tuple
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from threading import Lock

from config.settings import DEFAULT_WORKERS

logger = logging.getLogger(__name__)

# Hàm kiểm tra trả về (đạt, thông điệp, giá trị đo)
CheckFunction = Callable[[], Tuple[bool, str, Optional[float]]]


@dataclass
class VerificationTask:
    """Một bài kiểm tra cần chạy"""
    name: str
    func: CheckFunction
    tolerance: Optional[float] = None


@dataclass
class WorkerResult:
    """Kết quả từ một worker"""
    name: str
    success: bool
    message: str
    value: Optional[float] = None
    tolerance: Optional[float] = None
    elapsed: float = 0.0


class ThreadPoolManager:
    """Quản lý pool các worker chạy bài kiểm tra"""

    def __init__(self, max_workers: int = DEFAULT_WORKERS,
                 log_message: Optional[Callable[[str], None]] = None,
                 task_completed: Optional[Callable[[WorkerResult], None]] = None):
        """
        Khởi tạo pool

        Args:
            max_workers: Số worker tối đa
            log_message: Callback nhận dòng log
            task_completed: Callback khi một bài kiểm tra xong
        """
        self.max_workers = max(1, int(max_workers))
        self.log_message = log_message or (lambda message: logger.info(message))
        self.task_completed = task_completed
        self.executor: Optional[ThreadPoolExecutor] = None
        self.is_running = True
        self.lock = Lock()
        self.completed: List[WorkerResult] = []

    def _process_task(self, task: VerificationTask) -> WorkerResult:
        """Chạy một bài kiểm tra, đổi mọi ngoại lệ thành kết quả thất bại"""
        started = time.perf_counter()
        try:
            success, message, value = task.func()
            return WorkerResult(task.name, bool(success), message, value, task.tolerance,
                                time.perf_counter() - started)
        except Exception as e:
            logger.exception(f"Lỗi khi chạy kiểm tra {task.name}")
            return WorkerResult(task.name, False, f"{type(e).__name__}: {e}", None, task.tolerance,
                                time.perf_counter() - started)

    def process_tasks(self, tasks: List[VerificationTask]) -> List[WorkerResult]:
        """
        Chạy danh sách bài kiểm tra

        Args:
            tasks: Các bài kiểm tra

        Returns:
            Kết quả theo đúng thứ tự đã nộp; khi nhận Ctrl+C, pool dừng và
            các kiểm tra chưa xong được ghi "Đã hủy"
        """
        self.is_running = True
        self.completed = []
        results: List[Optional[WorkerResult]] = [None] * len(tasks)
        self.log_message(f"Bắt đầu chạy {len(tasks)} kiểm tra với {self.max_workers} worker...")

        try:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                self.executor = executor

                futures = {}
                try:
                    for idx, task in enumerate(tasks):
                        if not self.is_running:
                            break
                        futures[executor.submit(self._process_task, task)] = idx

                    # Thu thập kết quả
                    for future in as_completed(futures):
                        self._collect(future.result(), futures[future], results)

                except KeyboardInterrupt:
                    self.log_message("Nhận Ctrl+C, hủy các kiểm tra chưa chạy")
                    self.stop()
                    for future, idx in futures.items():
                        if results[idx] is None and future.done() and not future.cancelled() \
                                and future.exception() is None:
                            self._collect(future.result(), idx, results)

        except Exception as e:
            self.log_message(f"Lỗi: {str(e)}")
            logger.exception("ThreadPool error")

        finally:
            self.executor = None

        return [
            result if result is not None else WorkerResult(task.name, False, "Đã hủy", None, task.tolerance)
            for task, result in zip(tasks, results)
        ]

    def _collect(self, result: WorkerResult, idx: int, results: List[Optional[WorkerResult]]):
        results[idx] = result
        with self.lock:
            self.completed.append(result)

        if self.task_completed:
            self.task_completed(result)
        status = "✓" if result.success else "✗"
        self.log_message(f"[{result.name}] {status} {result.message}")

    def stop(self):
        """Dừng các bài kiểm tra chưa bắt đầu"""
        self.is_running = False
        self.log_message("Đang dừng các worker...")

        if self.executor:
            self.executor.shutdown(wait=False, cancel_futures=True)
