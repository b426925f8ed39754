//! Parse PropBank proposition lines and their pointer expressions.
//!
//!     cargo run --example prop_lines

use srl_extract::propbank::{parse_pointer_expr, parse_prop_line, sort_propositions, RoleLabel};

const LINES: &[&str] = &[
    "wsj/00/wsj_0001.mrg 1 18 gold meet-v meet.01 ----- 14:1*16:1*17:1-ARG0 18:0-rel 19:1-ARGM-TMP",
    "wsj/00/wsj_0001.mrg 0 1 gold want-v want.01 ----- 0:1-ARG0 1:0-rel 2:2-ARG1",
    "wsj/01/wsj_0004.mrg 1 4 gold say-v say.01 ----- 3:1-ARG0 4:0-rel 0:1,6:1-ARG1",
];

fn main() {
    let props: Vec<_> = LINES.iter().map(|l| parse_prop_line(l).expect("valid line")).collect();
    for p in sort_propositions(props) {
        println!("{} tree {} predicate terminal {}", p.file_id, p.tree_index, p.predicate_terminal);
        for label in [RoleLabel::Arg0, RoleLabel::Rel, RoleLabel::Arg1] {
            for expr in p.exprs(label) {
                let kinds: Vec<&str> = expr
                    .connectors()
                    .iter()
                    .map(|c| if c.is_split() { "split" } else { "chain" })
                    .collect();
                println!("  {label:<4} {expr:<16} {} part(s) {kinds:?}", expr.parts().len());
            }
        }
    }

    for bad in ["14:1**16:1", "3:x", "7"] {
        println!("{bad:<12} {}", parse_pointer_expr(bad).unwrap_err());
    }
}
