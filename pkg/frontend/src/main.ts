// Browser bootstrap: hash routing plus event delegation over data-action
// attributes. All state lives in the App controller.

import { ApiClient } from './api.js';
import { App, DecisionFormData } from './app.js';

function readForm(form: HTMLFormElement): DecisionFormData {
  const data = new FormData(form);
  const text = (name: string) => (data.get(name) ?? '').toString();
  return {
    action: text('action'),
    curator: text('curator'),
    corrected_property: text('corrected_property'),
    corrected_value: text('corrected_value'),
    corrected_source: text('corrected_source'),
    vocab_scheme: text('vocab_scheme'),
    vocab_label: text('vocab_label'),
    note: text('note'),
  };
}

export function start(root: HTMLElement): App {
  const params = new URLSearchParams(window.location.search);
  const client = new ApiClient('', params.get('token'));
  const app = new App(client, (html) => {
    root.innerHTML = html;
  });

  window.addEventListener('hashchange', () => {
    void app.navigate(window.location.hash);
  });

  root.addEventListener('click', (event) => {
    const target = (event.target as HTMLElement).closest('[data-action]');
    if (!target) return;
    const action = target.getAttribute('data-action');
    if (action === 'retry') {
      void app.refresh();
    } else if (action === 'page-prev') {
      void app.turnPage(-1);
    } else if (action === 'page-next') {
      void app.turnPage(1);
    } else if (action === 'prefill') {
      const value = target.getAttribute('data-value') ?? '';
      const input = root.querySelector<HTMLInputElement>('input[name=corrected_value]');
      const select = root.querySelector<HTMLSelectElement>('select[name=action]');
      if (input) input.value = value;
      if (select) select.value = 'correct';
    }
  });

  root.addEventListener('change', (event) => {
    const target = event.target as HTMLElement;
    if (target.getAttribute('data-action') === 'filter') {
      const select = target as HTMLSelectElement;
      void app.setFilter(select.name as 'status' | 'reason', select.value);
    }
  });

  root.addEventListener('submit', (event) => {
    const form = event.target as HTMLFormElement;
    if (form.getAttribute('data-action') !== 'decision-form') return;
    event.preventDefault();
    const section = form.closest('[data-flag-id]');
    const flagId = section?.getAttribute('data-flag-id');
    if (flagId) void app.submitDecision(flagId, readForm(form));
  });

  void app.navigate(window.location.hash);
  return app;
}

if (typeof document !== 'undefined') {
  const root = document.getElementById('app');
  if (root) start(root);
}
