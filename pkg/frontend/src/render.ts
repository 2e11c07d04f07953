// Pure view functions: state in, HTML string out. Interactivity is wired by
// the controller through data-action attributes, so these stay testable
// without a DOM.

import type { AppState } from './state.js';
import type {
  CandidateDto,
  FlagDetail,
  FlagSummary,
  QuantityDto,
  StatsResponse,
  TupleDto,
} from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

const REASON_LABELS: Record<string, string> = {
  MISMATCH: 'channel mismatch',
  UNKNOWN_TERM: 'unknown term',
  RESTRICTION_VIOLATION: 'restriction violation',
  MISCLASSIFIED_SCHEME: 'wrong scheme',
  MULTIWORD_SUSPECT: 'multi-word fragment',
};

export function reasonBadge(reason: string): string {
  const label = REASON_LABELS[reason] ?? reason;
  return `<span class="badge badge-${escapeHtml(reason.toLowerCase())}" title="${escapeHtml(reason)}">${escapeHtml(label)}</span>`;
}

function valueText(value: string | QuantityDto): string {
  if (typeof value === 'string') return value;
  return `${value.magnitude} ${value.unit ?? ''}`.trim();
}

export function renderToast(state: AppState): string {
  if (!state.toast) return '';
  return `<div class="toast toast-${state.toast.kind}">${escapeHtml(state.toast.message)}</div>`;
}

export function renderError(message: string): string {
  return `
    <div class="error-state">
      <p>Could not reach the curation API: ${escapeHtml(message)}</p>
      <button data-action="retry">Retry</button>
    </div>`;
}

export function renderNav(state: AppState): string {
  const open = state.stats ? String(state.stats.flags.open_total) : '…';
  return `
    <nav>
      <a href="#/queue" data-action="nav">Queue <span class="pill">${escapeHtml(open)} open</span></a>
      <a href="#/stats" data-action="nav">Dashboard</a>
    </nav>`;
}

function flagRow(flag: FlagSummary): string {
  return `
    <tr>
      <td>${reasonBadge(flag.reason)}</td>
      <td><a href="#/flags/${escapeHtml(flag.id)}" data-action="nav">${escapeHtml(flag.detail)}</a></td>
      <td class="status status-${escapeHtml(flag.status)}">${escapeHtml(flag.status)}</td>
      <td class="mono">${escapeHtml(flag.entry_id)}</td>
    </tr>`;
}

export function renderQueue(state: AppState): string {
  const page = state.page;
  if (!page) return '<p class="loading">Loading queue…</p>';
  const filters = state.filters;
  const reasons = ['', 'MISMATCH', 'UNKNOWN_TERM', 'RESTRICTION_VIOLATION',
                   'MISCLASSIFIED_SCHEME', 'MULTIWORD_SUSPECT'];
  const statuses = ['open', 'accepted', 'corrected', 'rejected', ''];
  const options = (values: string[], current: string | undefined) =>
    values.map((v) =>
      `<option value="${escapeHtml(v)}"${v === (current ?? '') ? ' selected' : ''}>${escapeHtml(v || 'any')}</option>`,
    ).join('');

  const body = page.items.length
    ? `<table class="flags"><thead><tr><th>reason</th><th>detail</th><th>status</th><th>entry</th></tr></thead>
       <tbody>${page.items.map(flagRow).join('')}</tbody></table>`
    : `<p class="empty">No ${escapeHtml(filters.status ?? '')} flags — the queue is clear.</p>`;

  const pages = Math.max(1, Math.ceil(page.total / page.page_size));
  return `
    <section class="queue">
      <h1>Flag queue</h1>
      <form class="filters" data-action="filter-form">
        <label>status <select name="status" data-action="filter">${options(statuses, filters.status)}</select></label>
        <label>reason <select name="reason" data-action="filter">${options(reasons, filters.reason)}</select></label>
      </form>
      ${body}
      <footer class="pager">
        <button data-action="page-prev" ${page.page <= 1 ? 'disabled' : ''}>&laquo; prev</button>
        <span>page ${page.page} of ${pages} &middot; ${page.total} flag(s)</span>
        <button data-action="page-next" ${page.page >= pages ? 'disabled' : ''}>next &raquo;</button>
      </footer>
    </section>`;
}

function tupleRows(tuples: TupleDto[]): string {
  if (!tuples.length) return '<tr><td colspan="3" class="empty">none</td></tr>';
  return tuples
    .map((t) => {
      const quantity = t.quantity ? ` <span class="qty">(${escapeHtml(valueText(t.quantity))})</span>` : '';
      return `<tr><td>${escapeHtml(t.property)}</td><td>${escapeHtml(valueText(t.value))}${quantity}</td><td>${escapeHtml(t.source)}</td></tr>`;
    })
    .join('');
}

function candidateChips(candidates: CandidateDto[]): string {
  const labeled = candidates.filter((c) => c.label);
  if (!labeled.length) return '';
  const chips = labeled
    .map(
      (c) =>
        `<button type="button" class="chip" data-action="prefill" data-value="${escapeHtml(c.label!)}">
           ${escapeHtml(c.label!)} <small>${escapeHtml(c.scheme ?? '')}/${escapeHtml(c.kind ?? '')}</small>
         </button>`,
    )
    .join('');
  return `<div class="candidates"><span>suggestions:</span>${chips}</div>`;
}

export function renderFlagDetail(state: AppState): string {
  const detail = state.detail;
  if (!detail) return '<p class="loading">Loading flag…</p>';
  const context = detail.recipe_context;
  const flagged = detail.tuples
    .map((t) => `<code>${escapeHtml(t.property)} = ${escapeHtml(valueText(t.value))} [${escapeHtml(t.source)}]</code>`)
    .join(' ');
  const firstTuple = detail.tuples[0];
  const prefillProperty = firstTuple ? firstTuple.property : '';
  const suggested = detail.candidates.find((c) => c.label)?.label ?? '';
  const decided = detail.status !== 'open';

  return `
    <section class="flag-detail" data-flag-id="${escapeHtml(detail.id)}">
      <a href="#/queue" data-action="nav">&laquo; back to queue</a>
      <h1>${reasonBadge(detail.reason)} ${escapeHtml(context.recipe_name ?? detail.entry_id)}</h1>
      <p class="detail">${escapeHtml(detail.detail)}</p>
      <p class="tuples-involved">${flagged}</p>
      ${candidateChips(detail.candidates)}
      <div class="channels">
        <div><h2>Recipe card</h2><table><tbody>${tupleRows(context.card)}</tbody></table></div>
        <div><h2>LLM output</h2><table><tbody>${tupleRows(context.llm)}</tbody></table></div>
      </div>
      ${decided
        ? `<p class="resolved">Already ${escapeHtml(detail.status)}.</p>`
        : renderDecisionForm(prefillProperty, suggested, firstTuple?.source)}
    </section>`;
}

function renderDecisionForm(property: string, suggestedValue: string, source?: string): string {
  return `
    <form class="decision" data-action="decision-form">
      <h2>Decision</h2>
      <label>action
        <select name="action" data-action="decision-action">
          <option value="accept">accept</option>
          <option value="correct"${suggestedValue ? ' selected' : ''}>correct</option>
          <option value="reject">reject</option>
        </select>
      </label>
      <fieldset class="correct-fields">
        <label>property <input name="corrected_property" value="${escapeHtml(property)}"></label>
        <label>corrected value <input name="corrected_value" value="${escapeHtml(suggestedValue)}"></label>
        <label>channel
          <select name="corrected_source">
            <option value="">both</option>
            <option value="CARD"${source === 'CARD' ? ' selected' : ''}>CARD</option>
            <option value="LLM"${source === 'LLM' ? ' selected' : ''}>LLM</option>
          </select>
        </label>
      </fieldset>
      <fieldset class="vocab-fields">
        <legend>vocabulary addition (optional)</legend>
        <label>scheme <input name="vocab_scheme" placeholder="ingredient"></label>
        <label>preferred label <input name="vocab_label"></label>
      </fieldset>
      <label>curator <input name="curator" required></label>
      <label>note <input name="note"></label>
      <button type="submit" data-action="submit-decision">Submit decision</button>
      <span class="form-error"></span>
    </form>`;
}

export function renderStats(state: AppState): string {
  const stats = state.stats;
  if (!stats) return '<p class="loading">Loading stats…</p>';
  const reasonRows = (counts: Record<string, number>) =>
    Object.entries(counts)
      .map(([reason, count]) => `<tr><td>${reasonBadge(reason)}</td><td>${count}</td></tr>`)
      .join('') || '<tr><td colspan="2" class="empty">none</td></tr>';
  const trend = state.trend.length
    ? state.trend.map((n) => `<li>${n}</li>`).join('')
    : '<li>–</li>';
  const graph = stats.graph
    ? `<p>graph: ${stats.graph.recipe_count} recipes, ${stats.graph.ingredient_node_count} ingredient nodes, ${stats.graph.triple_count} triples</p>`
    : '<p>graph: not ingested yet</p>';
  return `
    <section class="stats">
      <h1>Dashboard</h1>
      <p class="headline">
        <span class="open-count">${stats.flags.open_total}</span> open &middot;
        <span class="resolved-count">${stats.flags.resolved_total}</span> resolved &middot;
        vocabulary revision <span class="vocab-revision">${stats.vocabulary_revision}</span>
      </p>
      <div class="by-reason">
        <div><h2>Open by reason</h2><table><tbody>${reasonRows(stats.flags.open)}</tbody></table></div>
        <div><h2>Resolved by reason</h2><table><tbody>${reasonRows(stats.flags.resolved)}</tbody></table></div>
      </div>
      <h2>Open-flag trend across rounds</h2>
      <ol class="trend">${trend}</ol>
      ${graph}
    </section>`;
}

export function renderApp(state: AppState): string {
  let main: string;
  if (state.error) {
    main = renderError(state.error);
  } else if (state.route.view === 'flag') {
    main = renderFlagDetail(state);
  } else if (state.route.view === 'stats') {
    main = renderStats(state);
  } else {
    main = renderQueue(state);
  }
  return `${renderNav(state)}${renderToast(state)}<main>${main}</main>`;
}
