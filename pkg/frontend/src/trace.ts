// Trace viewer projections over the engine's newline-delimited trace files:
// timeline, per-phase clusters, and the executed-step DAG.

export interface TraceEventRow {
  timestamp_ms: number;
  phase: string;
  step_name: string;
  kind: string;
  usage: { prompt_tokens: number; completion_tokens: number };
  cost_usd: number;
  [key: string]: unknown;
}

const PHASE_ORDER = [
  "context_gathering",
  "concept_design",
  "game_plan",
  "scene_content",
  "assets",
  "assembly",
];

export function parseTrace(ndjson: string): TraceEventRow[] {
  return ndjson
    .split("\n")
    .filter((line) => line.trim().length > 0)
    .map((line) => JSON.parse(line) as TraceEventRow);
}

export function timelineView(events: TraceEventRow[]): TraceEventRow[] {
  return [...events].sort((a, b) => a.timestamp_ms - b.timestamp_ms);
}

export function clusterView(events: TraceEventRow[]): Map<string, TraceEventRow[]> {
  const groups = new Map<string, TraceEventRow[]>();
  for (const phase of PHASE_ORDER) {
    const members = events.filter((e) => e.phase === phase);
    if (members.length) groups.set(phase, members);
  }
  return groups;
}

export function dagView(events: TraceEventRow[]): { nodes: string[]; edges: [string, string][] } {
  const nodesByPhase = new Map<string, Set<string>>();
  for (const event of events) {
    const node = `${event.phase}/${event.step_name}`;
    if (!nodesByPhase.has(event.phase)) nodesByPhase.set(event.phase, new Set());
    nodesByPhase.get(event.phase)!.add(node);
  }
  const executed = PHASE_ORDER.filter((p) => nodesByPhase.has(p));
  const edges: [string, string][] = [];
  for (let i = 0; i + 1 < executed.length; i += 1) {
    for (const source of nodesByPhase.get(executed[i])!) {
      for (const target of nodesByPhase.get(executed[i + 1])!) {
        edges.push([source, target]);
      }
    }
  }
  const nodes = executed.flatMap((p) => [...nodesByPhase.get(p)!]);
  return { nodes, edges };
}

export function totals(events: TraceEventRow[]): { tokens: number; costUsd: number } {
  let tokens = 0;
  let costUsd = 0;
  for (const event of events) {
    tokens += event.usage.prompt_tokens + event.usage.completion_tokens;
    costUsd += event.cost_usd;
  }
  return { tokens, costUsd };
}
