/** Poll until a condition holds; jsdom has no test-library waiters built in.
 * Async probes are awaited, so a pending promise is never mistaken for truth. */
export async function waitFor<T>(
  probe: () => T | null | undefined | false | Promise<T | null | undefined | false>,
  timeoutMs = 5000,
  what = "condition",
): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    const value = await probe();
    if (value) return value;
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}

export function query<T extends HTMLElement>(root: HTMLElement, selector: string): T | null {
  return root.querySelector(selector) as T | null;
}

export function queryAll<T extends HTMLElement>(root: HTMLElement, selector: string): T[] {
  return Array.from(root.querySelectorAll(selector)) as T[];
}
