export interface Debounced<Args extends unknown[]> {
  call: (...args: Args) => void;
  cancel: () => void;
  flush: () => void;
}

/** Trailing-edge debounce: the wrapped function runs once, `ms` after the
 * last call. Used to coalesce slider movement into single what-if requests. */
export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  ms: number,
): Debounced<Args> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: Args | null = null;

  const fire = () => {
    timer = null;
    if (pending !== null) {
      const args = pending;
      pending = null;
      fn(...args);
    }
  };

  return {
    call(...args: Args) {
      pending = args;
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(fire, ms);
    },
    cancel() {
      if (timer !== null) clearTimeout(timer);
      timer = null;
      pending = null;
    },
    flush() {
      if (timer !== null) clearTimeout(timer);
      fire();
    },
  };
}
