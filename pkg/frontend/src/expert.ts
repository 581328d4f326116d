// Set-family arithmetic on bitmasks, enough to play an idealistic expert:
// build the family a rule set accepts, keep its reachable part, and test
// whether a rule binds every member.

import type { RuleDoc } from './types.js';

function popcount(value: number): number {
  let v = value;
  let count = 0;
  while (v) {
    v &= v - 1;
    count += 1;
  }
  return count;
}

function mask(ids: number[]): number {
  return ids.reduce((acc, id) => acc | (1 << id), 0);
}

export function acceptedFamily(rules: RuleDoc[], n: number): number[] {
  const pairs = rules.map((r) => ({ ant: mask(r.if), cons: r.then }));
  const out: number[] = [];
  for (let m = 0; m < 1 << n; m += 1) {
    if (pairs.every((p) => ((m >> p.cons) & 1) === 0 || (m & p.ant) !== 0)) {
      out.push(m);
    }
  }
  out.sort((a, b) => popcount(a) - popcount(b) || a - b);
  return out;
}

/** Members reachable from {} by adding one element at a time inside the family. */
export function reachablePart(familySortedBySize: number[]): number[] {
  const reach = new Set<number>();
  const out: number[] = [];
  for (const m of familySortedBySize) {
    if (m === 0) {
      reach.add(0);
      out.push(0);
      continue;
    }
    let rem = m;
    while (rem) {
      const low = rem & -rem;
      if (reach.has(m ^ low)) {
        reach.add(m);
        out.push(m);
        break;
      }
      rem ^= low;
    }
  }
  return out;
}

export function learningFamily(rules: RuleDoc[], n: number): number[] {
  return reachablePart(acceptedFamily(rules, n));
}

export function isImplicateOf(family: number[], rule: RuleDoc): boolean {
  const ant = mask(rule.if);
  return family.every((m) => ((m >> rule.then) & 1) === 0 || (m & ant) !== 0);
}

/** Answers queries the way an expert committed to the given space would. */
export function idealisticExpert(rules: RuleDoc[], n: number):
    (query: RuleDoc) => 'yes' | 'no' {
  const family = learningFamily(rules, n);
  return (query) => (isImplicateOf(family, query) ? 'yes' : 'no');
}
