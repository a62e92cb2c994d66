import init, { circle_graph, realize, sync_report } from './pkg/cantor_web.js';

const $ = (id) => document.getElementById(id);

function fraction(text) {
  const [p, q] = text.split('/');
  return q === undefined ? Number(p) : Number(p) / Number(q);
}

function plot(data) {
  const svg = $('graph-plot');
  const size = 320;
  const pad = 10;
  const scale = (size - 2 * pad) / data.r;
  const at = (v) => pad + v * scale;
  let body = `<rect x="${pad}" y="${pad}" width="${size - 2 * pad}" height="${size - 2 * pad}" fill="none" stroke="#ddd"/>`;
  body += `<line x1="${pad}" y1="${size - pad}" x2="${size - pad}" y2="${pad}" stroke="#eee"/>`;
  for (const [x, y] of data.points) {
    const cx = at(fraction(x));
    const cy = size - at(fraction(y));
    body += `<circle cx="${cx}" cy="${cy}" r="2" fill="${data.compatible ? '#2563eb' : '#dc2626'}"/>`;
  }
  svg.innerHTML = body;
}

function runGraph() {
  const out = circle_graph($('graph-input').value, Number($('graph-budget').value));
  if (out.startsWith('error:')) {
    $('graph-info').textContent = out;
    $('graph-plot').innerHTML = '';
    return;
  }
  const data = JSON.parse(out);
  $('graph-info').textContent =
    `circle map: ${data.compatible ? 'yes' : 'no'} (${data.failures} failures)\n` +
    `orientation: ${data.orientation}\n` +
    `depth ${data.depth}, ${data.points.length} points`;
  plot(data);
}

function runGerm() {
  $('germ-output').textContent = realize(
    Number($('germ-n').value),
    Number($('germ-r').value),
    $('germ-point').value,
    Number($('germ-i').value),
    Number($('germ-j').value),
    $('germ-avoid').value,
  );
}

function runSync() {
  $('sync-output').textContent = sync_report($('sync-input').value);
}

await init();
$('graph-run').addEventListener('click', runGraph);
$('germ-run').addEventListener('click', runGerm);
$('sync-run').addEventListener('click', runSync);
runGraph();
runGerm();
runSync();
