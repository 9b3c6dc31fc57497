"""Per-run phase timings for `--trace`."""

import time
from collections import OrderedDict
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional


class RunTrace:
  """Ordered spans (parse, ground, search, ...) of one CLI invocation."""

  def __init__(self, command: str):
    self.command = command
    self.started_ms = time.perf_counter() * 1000
    self.spans: OrderedDict[str, Dict[str, Any]] = OrderedDict()
    self.status = 'IN_PROGRESS'

  def add_span(self, name: str, inputs: Optional[Dict[str, Any]] = None) -> str:
    """Open a span; a repeated name gets a numeric suffix.

    Returns:
        span_id: key of the created span
    """
    span_id = name
    n = 1
    while span_id in self.spans:
      n += 1
      span_id = f'{name}#{n}'
    self.spans[span_id] = {
      'name': name,
      'start_ms': time.perf_counter() * 1000,
      'status': 'RUNNING',
      'inputs': inputs or {},
      'outputs': {},
    }
    return span_id

  def complete_span(
    self, span_id: str, outputs: Optional[Dict[str, Any]] = None, status: str = 'OK'
  ) -> None:
    """Record duration and outputs; unknown ids are ignored."""
    span = self.spans.get(span_id)
    if span is None:
      return
    span['duration_ms'] = time.perf_counter() * 1000 - span['start_ms']
    span['outputs'].update(outputs or {})
    span['status'] = status

  @contextmanager
  def span(self, name: str, **inputs: Any) -> Iterator[Dict[str, Any]]:
    """Time a block; the yielded dict collects output counts."""
    span_id = self.add_span(name, inputs)
    outputs: Dict[str, Any] = {}
    try:
      yield outputs
    except Exception:
      self.complete_span(span_id, outputs, status='ERROR')
      raise
    self.complete_span(span_id, outputs)

  def complete(self, status: str = 'OK') -> None:
    """Close the run with a final status."""
    self.status = status
    self.execution_ms = time.perf_counter() * 1000 - self.started_ms

  def lines(self) -> list[str]:
    """Render one line per span, then the total."""
    rows = []
    for span_id, span in self.spans.items():
      counts = ' '.join(f'{k}={v}' for k, v in {**span['inputs'], **span['outputs']}.items())
      duration = span.get('duration_ms', 0.0)
      rows.append(f'{span_id:<10} {span["status"]:<7} {duration:9.2f} ms  {counts}'.rstrip())
    total = getattr(self, 'execution_ms', time.perf_counter() * 1000 - self.started_ms)
    rows.append(f'{self.command:<10} {self.status:<7} {total:9.2f} ms')
    return rows
