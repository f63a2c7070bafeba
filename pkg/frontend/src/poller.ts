// Fixed-interval polling with a single in-flight request: ticks are
// skipped while a fetch or a submitted move is still pending.

export class Poller {
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;
  private paused = 0;

  constructor(
    private readonly tick: () => Promise<void>,
    private readonly intervalMs = 1000,
  ) {}

  start(): void {
    if (this.timer !== null) {
      return;
    }
    this.timer = setInterval(() => {
      void this.fire();
    }, this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  get busy(): boolean {
    return this.inFlight || this.paused > 0;
  }

  private async fire(): Promise<void> {
    if (this.busy) {
      return;
    }
    this.inFlight = true;
    try {
      await this.tick();
    } finally {
      this.inFlight = false;
    }
  }

  // Serialize a user action: polling pauses and at most one action runs.
  async run<T>(action: () => Promise<T>): Promise<T | null> {
    if (this.busy) {
      return null;
    }
    this.paused += 1;
    try {
      return await action();
    } finally {
      this.paused -= 1;
    }
  }
}
