/** Wire types mirroring what the assistant service returns. */

export interface RankedPassage {
  passage_id: string;
  score: number;
  rank: number;
  text: string | null;
}

export interface Answer {
  text: string;
  mode: "abstractive" | "extractive_baseline" | "none";
  source_passage_ids: string[];
}

export interface TurnView {
  turn_number: number;
  raw_query: string;
  rewritten_query: string;
  degraded_flags: string[];
  ranked: RankedPassage[];
  answer: Answer;
  timings_ms: Record<string, number>;
}

export interface TranscriptTurn {
  turn_number: number;
  raw_query: string;
  rewritten_query: string;
  top_passage_id: string | null;
  answer: string;
}

export interface Transcript {
  session_id: string;
  topic_label: string | null;
  turns: TranscriptTurn[];
}
