"""
并发执行工具
扫描网格的各点相互独立，用线程池并行计算，结果按输入顺序重组
"""
import concurrent.futures
import threading
import time
from collections import defaultdict
from typing import Any, Callable, Dict, Iterable, List, Optional

from utils.logutil import logger


class ConcurrentExecutor:
    """
    并发执行器
    map_ordered 保证输出顺序与输入一致；max_workers == 1 时直接串行执行
    """
    def __init__(self, max_workers: int = 4):
        """
        初始化并发执行器

        Args:
            max_workers: 最大工作线程数
        """
        if max_workers < 1:
            raise ValueError(f"max_workers 必须 >= 1，实际为 {max_workers}")

        self.max_workers = max_workers
        self.executor: Optional[concurrent.futures.Executor] = None
        self.executor_lock = threading.RLock()
        self.stats_lock = threading.Lock()

        self.total_tasks = 0
        self.successful_tasks = 0
        self.task_errors = 0
        self.error_types: Dict[str, int] = defaultdict(int)
        self.elapsed = 0.0

    def _initialize_executor(self) -> concurrent.futures.Executor:
        """延迟初始化执行器"""
        with self.executor_lock:
            if self.executor is None:
                self.executor = concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers)
            return self.executor

    def _record(self, count: int, errors: int, error_type: Optional[str] = None):
        with self.stats_lock:
            self.total_tasks += count
            self.successful_tasks += count - errors
            self.task_errors += errors
            if error_type:
                self.error_types[error_type] += 1

    def map_ordered(self, func: Callable[[Any], Any], items: Iterable[Any]) -> List[Any]:
        """
        对每个元素执行 func，按输入顺序返回结果；任一任务抛出异常时原样抛出

        Args:
            func: 单个元素的处理函数
            items: 输入序列

        Returns:
            结果列表
        """
        items = list(items)
        start_time = time.perf_counter()
        try:
            if self.max_workers == 1 or len(items) <= 1:
                results = [func(item) for item in items]
            else:
                executor = self._initialize_executor()
                results = list(executor.map(func, items))
        except Exception as e:
            self._record(len(items), 1, type(e).__name__)
            logger.debug(f"并发任务失败: {type(e).__name__}: {e}")
            raise
        finally:
            self.elapsed += time.perf_counter() - start_time

        self._record(len(items), 0)
        return results

    def get_stats(self) -> Dict[str, Any]:
        """
        获取执行统计信息

        Returns:
            统计信息字典
        """
        with self.stats_lock:
            return {
                'total_tasks': self.total_tasks,
                'successful_tasks': self.successful_tasks,
                'failed_tasks': self.task_errors,
                'error_types': dict(self.error_types),
                'max_workers': self.max_workers,
                'elapsed_seconds': self.elapsed,
            }

    def shutdown(self, wait: bool = True):
        """
        关闭执行器

        Args:
            wait: 是否等待任务完成
        """
        with self.executor_lock:
            if self.executor is not None:
                self.executor.shutdown(wait=wait)
                self.executor = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.shutdown()
