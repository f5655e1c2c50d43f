use rtcascade_core::synth::Synthetic;

use crate::artifacts::OutputDir;
use crate::error::Result;

pub fn write_synthetic(out: &mut OutputDir, s: &Synthetic) -> Result<()> {
    out.lines("corpus.jsonl", |w| s.write_corpus(w))?;
    out.lines("trolls.txt", |w| s.write_trolls(w))?;
    out.tsv_with_header("truth.tsv", |w| s.write_truth(w))
}
