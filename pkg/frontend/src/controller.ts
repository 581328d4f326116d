import { ApiError, SessionApi } from './api.js';
import type {
  InferenceEvent,
  Progress,
  QueryView,
  RuleDoc,
  SessionConfig,
} from './types.js';

export interface LogLine {
  kind: 'posinf' | 'negainf' | 'unreached' | 'answer' | 'notice';
  text: string;
}

export interface FamilyView {
  memberLabels: string[][];
  total: number | null;
  truncated: boolean;
}

export interface SessionView {
  phase: 'setup' | 'asking' | 'done' | 'error';
  sessionId: string | null;
  query: QueryView | null;
  prompt: string | null;
  doneReason: string | null;
  progress: Progress | null;
  log: LogLine[];
  family: FamilyView | null;
  notice: string | null;
  error: string | null;
}

const FRESH: SessionView = {
  phase: 'setup',
  sessionId: null,
  query: null,
  prompt: null,
  doneReason: null,
  progress: null,
  log: [],
  family: null,
  notice: null,
  error: null,
};

export function formatRule(rule: RuleDoc, labels: string[] | null): string {
  const name = (i: number) => (labels ? labels[i] ?? String(i) : String(i));
  const body = rule.if.length ? rule.if.map(name).join(', ') : 'nothing else';
  return `(fail ${body} => fail ${name(rule.then)})`;
}

export function describeInference(event: InferenceEvent,
                                  labels: string[] | null): LogLine {
  const query = formatRule(event.query, labels);
  if (event.kind === 'negainf') {
    const witness = event.witness ? formatRule(event.witness, labels) : '?';
    return {
      kind: 'negainf',
      text: `skipped, inferred no: ${query}; justified by recorded no ${witness}`,
    };
  }
  if (event.kind === 'posinf') {
    return { kind: 'posinf', text: `skipped, inferred yes: ${query}` };
  }
  return { kind: 'unreached', text: `never examined: ${query}` };
}

/**
 * View-model for one expert session.  All server interaction funnels through
 * here; the DOM layer only renders the latest SessionView.
 */
export class SessionController {
  private view: SessionView = { ...FRESH };
  private labels: string[] | null = null;
  private lastInferenceId = -1;   // inference events arrive in cursor order
  private readonly listeners: Array<(view: SessionView) => void> = [];

  constructor(private readonly api: SessionApi) {}

  snapshot(): SessionView {
    return { ...this.view, log: [...this.view.log] };
  }

  onChange(listener: (view: SessionView) => void): void {
    this.listeners.push(listener);
  }

  private publish(patch: Partial<SessionView>): void {
    this.view = { ...this.view, ...patch };
    for (const listener of this.listeners) listener(this.snapshot());
  }

  async start(config: SessionConfig): Promise<SessionView> {
    try {
      const id = await this.api.createSession(config);
      this.view = { ...FRESH, sessionId: id };
      this.labels = config.labels ?? null;
      this.lastInferenceId = -1;
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
    return this.snapshot();
  }

  /** Reattach to an existing session, e.g. after a page reload. */
  async resume(sessionId: string): Promise<SessionView> {
    try {
      const state = await this.api.state(sessionId);
      this.view = { ...FRESH, sessionId };
      this.labels = state.labels;
      this.lastInferenceId = -1;
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
    return this.snapshot();
  }

  async answer(answer: 'yes' | 'no'): Promise<SessionView> {
    const { sessionId, query } = this.view;
    if (sessionId === null || query === null) return this.snapshot();
    try {
      const outcome = await this.api.answer(sessionId, query.id, answer);
      const log = [...this.view.log, {
        kind: 'answer' as const,
        text: `answered ${answer}: ${query.prompt}`,
      }];
      const notice = outcome.guard_rejected
        ? 'That yes would exclude the full question set, so it was noted but not applied.'
        : null;
      this.publish({ log, notice, progress: outcome.progress });
      await this.refresh();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await this.refresh();   // stale view; the server state wins
      } else {
        this.fail(err);
      }
    }
    return this.snapshot();
  }

  async inspectFamily(limit = 25): Promise<SessionView> {
    const { sessionId } = this.view;
    if (sessionId === null) return this.snapshot();
    try {
      const family = await this.api.family(sessionId, limit);
      this.publish({
        family: {
          memberLabels: family.member_labels,
          total: family.total,
          truncated: family.truncated,
        },
      });
    } catch (err) {
      this.fail(err);
    }
    return this.snapshot();
  }

  async exportRules(): Promise<string> {
    if (this.view.sessionId === null) throw new Error('no session');
    return this.api.exportRules(this.view.sessionId);
  }

  /** Pull new inference events and the pending query (or done state). */
  private async refresh(): Promise<void> {
    const sessionId = this.view.sessionId;
    if (sessionId === null) return;
    const next = await this.api.next(sessionId);
    const state = await this.api.state(sessionId);
    const fresh = state.recent_inferences
      .filter((e) => e.query_id > this.lastInferenceId);
    if (fresh.length) {
      this.lastInferenceId = fresh[fresh.length - 1]!.query_id;
    }
    const log = [...this.view.log,
                 ...fresh.map((e) => describeInference(e, this.labels))];
    if (next.done) {
      this.publish({
        phase: 'done', query: null, prompt: null,
        doneReason: next.reason, progress: next.progress, log,
      });
    } else {
      this.publish({
        phase: 'asking', query: next.query, prompt: next.query.prompt,
        doneReason: null, progress: next.progress, log,
      });
    }
  }

  private fail(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    this.publish({ phase: 'error', error: message });
  }
}
