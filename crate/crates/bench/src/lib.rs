//! Benchmark fixtures; see `benches/engine.rs`.

use formalize_core::logic::{parse, Dialect, Formula};

pub const DICTATION_INPUTS: [&str; 3] = [
    "Ax:Ay:(x<y->f(x)<f(y))",
    "Ax:Ay:(~x=y->Ez:((x<z&z<y) v (y<z&z<x)))",
    "Ab:Ac:((b<0&0<c)->En:Ax:(n<x->(b<f(x)&f(x)<c)))",
];

pub const GRID_INPUTS: [(&str, &str); 4] = [
    ("atom", "nachbar(u,x)"),
    (
        "depth1",
        "~((Ey:rechts(x,y)&Ey:links(x,y))&(Ey:ueber(x,y)&Ey:unter(x,y)))",
    ),
    (
        "depth2",
        "Ay:Ez:(~dist(y,z)=dist(x,u)->(nachbar(x,z)&~z=y))",
    ),
    (
        "depth3",
        "Ay:Ez:Aw:((dist(x,y)=dist(z,w)&nachbar(y,z)) v rechts(w,x))",
    ),
];

pub fn grid(src: &str) -> Formula {
    parse(src, Dialect::Grid).expect("fixture parses")
}

pub fn dictation(src: &str) -> Formula {
    parse(src, Dialect::Dictation).expect("fixture parses")
}
