/**
 * Tag-repair pass for sentences the lite tagger leaves without any verb.
 *
 * The grammatical-role heuristics anchor on the first verbal token, so a
 * verbless tagging (common for forms like "chased" that the lexicon only
 * knows as nouns) breaks every mention role in the sentence. When no
 * VERB/AUX is present, the most verb-shaped nominal after the first noun
 * phrase is retagged.
 */

import { TokenJson } from './schema.js';

const NOMINAL = new Set(['NOUN', 'PROPN']);
const VERBAL_SUFFIX = /(?:ed|ing|ize|ise|ify|ate|en)$/;

function looksVerbal(token: TokenJson, next: TokenJson | undefined): boolean {
  const word = token.text.toLowerCase();
  if (word.length < 4) return false;
  if (VERBAL_SUFFIX.test(word)) return true;
  // third-person -s/-es reading only when a determiner or pronoun follows,
  // where a plural-noun reading would be unusual
  if (/(?:es|s)$/.test(word) && next && (next.upos === 'DET' || next.upos === 'PRON')) {
    return true;
  }
  return false;
}

export function repairVerblessSentence(tokens: TokenJson[]): TokenJson[] {
  if (tokens.some((t) => t.upos === 'VERB' || t.upos === 'AUX')) {
    return tokens;
  }
  const firstNominal = tokens.findIndex((t) => NOMINAL.has(t.upos));
  if (firstNominal < 0) {
    return tokens;
  }
  for (let i = firstNominal + 1; i < tokens.length; i += 1) {
    if (!NOMINAL.has(tokens[i].upos)) continue;
    if (looksVerbal(tokens[i], tokens[i + 1])) {
      const repaired = tokens.slice();
      repaired[i] = { ...tokens[i], upos: 'VERB' };
      return repaired;
    }
  }
  return tokens;
}
