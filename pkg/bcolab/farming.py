from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Tuple
import sys
import logging
import multiprocessing as mp
import traceback

from .config import setting
from .errors import WorkerError

logger = logging.getLogger(__name__)


class ExceptionWrapper(object):
	r"""Wraps an exception plus traceback to communicate across processes"""
	def __init__(self, exc_info):
		# the traceback object itself is not picklable, only its text is sent
		self.exc_type = exc_info[0]
		self.exc_msg = ''.join(traceback.format_exception(*exc_info))


def _worker_loop(fn, shared_args, in_queue, out_queue):
	while True:
		job = in_queue.get()
		if job is None:
			break
		index, job_args = job
		args = dict(shared_args)
		args.update(job_args)
		try:
			output = fn(**args)
		except Exception:
			out_queue.put((index, ExceptionWrapper(sys.exc_info())))
		else:
			out_queue.put((index, output))


class Farmer(object):
	'''
	Farms independent jobs (calls of `fn` with keyword arguments) out to worker processes.
	
	Two types of arguments (both dicts):
	- shared_args = arguments passed to every call (sent to each worker once)
	- jobs = one dict of arguments per call
	
	Results are returned in job order no matter which worker finished first, so a run with workers produces
	exactly what the inline run (`num_workers=0`) produces. `fn` must be picklable (a module level function).
	'''
	def __init__(self, fn: Callable, jobs: Iterable[Mapping[str, Any]], shared_args: Mapping[str, Any] = None,
	             num_workers: int = None, timeout: float = None):
		'''
		:param fn: function to call for every job
		:param jobs: keyword arguments per call
		:param shared_args: keyword arguments common to all calls
		:param num_workers: worker processes (defaults to the `workers` setting, 0 runs inline)
		:param timeout: seconds to wait for any single result (defaults to the `timeout` setting)
		'''
		self.fn = fn
		self.jobs = [dict(job) for job in jobs]
		self.shared_args = {} if shared_args is None else dict(shared_args)
		self.num_workers = min(setting('workers', num_workers), len(self.jobs))
		self.timeout = setting('timeout', timeout)
	
	def _run_inline(self) -> Iterator[Tuple[int, Any]]:
		for index, job_args in enumerate(self.jobs):
			args = dict(self.shared_args)
			args.update(job_args)
			yield index, self.fn(**args)
	
	def _run_parallel(self) -> Iterator[Tuple[int, Any]]:
		in_queue, out_queue = mp.Queue(), mp.Queue()
		workers = [mp.Process(target=_worker_loop, daemon=True,
		                      args=(self.fn, self.shared_args, in_queue, out_queue))
		           for _ in range(self.num_workers)]
		for w in workers:
			w.start()
		try:
			for job in enumerate(self.jobs):
				in_queue.put(job)
			for _ in self.jobs:
				index, output = out_queue.get(timeout=self.timeout)
				if isinstance(output, ExceptionWrapper):
					logger.error('job %d failed with %s', index, output.exc_type.__name__)
					raise WorkerError(output.exc_type, output.exc_msg)
				yield index, output
		finally:
			for _ in workers:
				in_queue.put(None)
			for w in workers:
				w.join(timeout=1)
				if w.is_alive():
					w.terminate()
	
	def __len__(self):
		return len(self.jobs)
	
	def __iter__(self) -> Iterator[Tuple[int, Any]]:
		'''Yields (job index, result) in completion order'''
		if self.num_workers > 0:
			logger.debug('farming %d jobs to %d workers', len(self.jobs), self.num_workers)
			return self._run_parallel()
		return self._run_inline()
	
	def complete(self) -> List[Any]:
		'''Run all jobs and return their results in job order'''
		results = dict(self)
		return [results[i] for i in range(len(self.jobs))]


def farm(fn: Callable, jobs: Iterable[Mapping[str, Any]], num_workers: int = None, timeout: float = None,
         **shared_args: Any) -> List[Any]:
	'''Shortcut for `Farmer(fn, jobs, shared_args, num_workers, timeout).complete()`'''
	return Farmer(fn, jobs, shared_args=shared_args, num_workers=num_workers, timeout=timeout).complete()
