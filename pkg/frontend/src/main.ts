import { SessionApi } from './api.js';
import { SessionController } from './controller.js';
import { renderView } from './render.js';

const api = new SessionApi(window.location.origin.replace(/:\d+$/, ':8000'));
const controller = new SessionController(api);

const root = document.getElementById('app')!;
const form = document.getElementById('setup-form') as HTMLFormElement;

controller.onChange((view) => renderView(root, view));

form.addEventListener('submit', async (event) => {
  event.preventDefault();
  const data = new FormData(form);
  const labels = String(data.get('labels') ?? '')
    .split(',').map((s) => s.trim()).filter(Boolean);
  const resume = String(data.get('session') ?? '').trim();
  if (resume) {
    await controller.resume(resume);
    return;
  }
  if (!labels.length) {
    const field = form.querySelector('.form-error')!;
    field.textContent = 'Enter at least one question label (comma separated).';
    return;
  }
  form.querySelector('.form-error')!.textContent = '';
  form.hidden = true;
  await controller.start({
    n: labels.length,
    labels,
    mode: (data.get('mode') as 'original' | 'revised') ?? 'revised',
    policy: (data.get('policy') as 'asc' | 'desc') ?? 'asc',
    proper_guard: data.get('proper_guard') === 'on',
  });
});

root.addEventListener('click', async (event) => {
  const target = event.target as HTMLElement;
  if (target.dataset.answer === 'yes' || target.dataset.answer === 'no') {
    await controller.answer(target.dataset.answer);
    await controller.inspectFamily();
  }
  if (target.dataset.action === 'export') {
    const text = await controller.exportRules();
    const blob = new Blob([text], { type: 'text/plain' });
    const link = document.createElement('a');
    link.href = URL.createObjectURL(blob);
    link.download = 'session.rules';
    link.click();
  }
});
