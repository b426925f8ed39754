//! Compound scores and the five sentiment classes around `±t1` and `±t2`.
//!
//!     cargo run --example sentiment_buckets [T1 T2]

use srl_extract::stats::{normalize, sentiment_score, SentimentLexicon, Thresholds};

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("number")).collect();
    let thresholds = match args[..] {
        [t1, t2] => Thresholds::new(t1, t2).expect("0 < t1 < t2 <= 1"),
        _ => Thresholds::default(),
    };
    println!("t1={} t2={}", thresholds.t1, thresholds.t2);

    let lexicon: SentimentLexicon = [("good", 1.9), ("great", 3.1), ("bad", -2.5), ("fail", -0.4)]
        .into_iter()
        .collect();
    for word in ["good", "great", "bad", "fail", "said", "good great"] {
        let score = sentiment_score(word, &lexicon);
        println!("{word:<11} {score:>7.4}  {}", thresholds.bucket(score));
    }

    for edge in [-thresholds.t2, -thresholds.t1, thresholds.t1, thresholds.t2] {
        println!("score {edge:>5}  {}", thresholds.bucket(edge));
    }
    for sum in [0.0, 1.0, 4.0, 16.0, 1e6] {
        println!("normalize({sum}) = {:.6}", normalize(sum));
    }
}
