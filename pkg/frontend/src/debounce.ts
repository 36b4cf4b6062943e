// Slider-loop plumbing: trailing debounce for input events, and a
// latest-wins gate so at most one what-if response is ever applied out of
// order.

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
}

/** Wrap an async producer so only the newest call's result resolves; stale
 * results resolve to null instead of clobbering fresher ones. */
export function latestWins<A extends unknown[], R>(
  fn: (...args: A) => Promise<R>,
): (...args: A) => Promise<R | null> {
  let sequence = 0;
  return async (...args: A) => {
    const ticket = ++sequence;
    const result = await fn(...args);
    return ticket === sequence ? result : null;
  };
}
