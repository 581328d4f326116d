import type { SessionView } from './controller.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function bar(label: string, value: number, total: number): HTMLElement {
  const wrap = el('div', 'bar');
  wrap.appendChild(el('span', 'bar-label', `${label}: ${value}`));
  const track = el('div', 'bar-track');
  const fill = el('div', 'bar-fill');
  fill.style.width = total > 0 ? `${Math.round((100 * value) / total)}%` : '0%';
  track.appendChild(fill);
  wrap.appendChild(track);
  return wrap;
}

export function renderView(root: HTMLElement, view: SessionView): void {
  root.replaceChildren();

  if (view.error) {
    root.appendChild(el('div', 'error', view.error));
    return;
  }

  if (view.progress) {
    const p = view.progress;
    const bars = el('section', 'progress');
    bars.appendChild(bar('asked', p.posed, p.total_queries));
    bars.appendChild(bar('inferred yes', p.inferred_positive, p.total_queries));
    bars.appendChild(bar('inferred no', p.inferred_negative, p.total_queries));
    bars.appendChild(bar('remaining', p.remaining, p.total_queries));
    root.appendChild(bars);
  }

  if (view.phase === 'asking' && view.prompt) {
    const card = el('section', 'prompt-card');
    card.appendChild(el('p', 'prompt', view.prompt));
    if (view.notice) card.appendChild(el('p', 'notice', view.notice));
    const yes = el('button', 'answer-yes', 'Yes');
    yes.dataset.answer = 'yes';
    const no = el('button', 'answer-no', 'No');
    no.dataset.answer = 'no';
    card.append(yes, no);
    root.appendChild(card);
  }

  if (view.phase === 'done') {
    const done = el('section', 'done-card');
    done.appendChild(el('h2', 'done-title', 'Session complete'));
    done.appendChild(el('p', 'done-reason', view.doneReason ?? ''));
    const exportBtn = el('button', 'export', 'Download the rules');
    exportBtn.dataset.action = 'export';
    done.appendChild(exportBtn);
    root.appendChild(done);
  }

  const log = el('section', 'log');
  for (const line of view.log.slice(-30)) {
    log.appendChild(el('div', `log-line log-${line.kind}`, line.text));
  }
  root.appendChild(log);

  if (view.family) {
    const fam = el('section', 'family');
    const total = view.family.total === null
      ? 'count unavailable at this size'
      : `${view.family.total} states`;
    fam.appendChild(el('h3', 'family-title', `Current space: ${total}`));
    for (const labels of view.family.memberLabels) {
      fam.appendChild(el('div', 'family-member',
                         labels.length ? `{${labels.join(', ')}}` : '{}'));
    }
    if (view.family.truncated) {
      fam.appendChild(el('div', 'family-truncated', 'list truncated'));
    }
    root.appendChild(fam);
  }
}
