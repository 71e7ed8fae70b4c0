//! Parse the text format, print it canonically, and show the error
//! positions the parser reports.

use qstack::dsl::{parse_doc, print_doc};

const DOC: &str = "
# Anything after a hash is ignored.
quiver demo
vertex a
vertex b
vertex w framed
edge e : a -> b
edge f : b -> w
edge id_a : a -> a identity
triangle unit : id_a . e => e
dim a = 2
dim b = 2
dim w = 1
";

fn main() {
    let doc = parse_doc(DOC).unwrap();
    println!(
        "parsed {:?}: {} vertices, {} edges, {} triangles, dims for {}",
        doc.name,
        doc.shape.vertex_count(),
        doc.shape.edge_count() + doc.shape.identity_edge_count(),
        doc.shape.triangle_count(),
        doc.dims.len()
    );

    // Printing is canonical: parse(print(doc)) == doc, and printing the
    // reparse reproduces the same bytes.
    let printed = print_doc(&doc);
    let again = parse_doc(&printed).unwrap();
    assert_eq!(again, doc);
    assert_eq!(print_doc(&again), printed);
    println!("canonical form:\n{printed}");

    // Errors carry line and column.
    for bad in [
        "quiver x\nvertex a\nvertex a\n",
        "quiver x\nvertex a\nedge e : a -> ghost\n",
        "vertex a\n",
        "quiver x\nvertex a\ndim a = -3\n",
        "quiver x\nvertex a\nvertex b\nedge e : a -> b identity\n",
    ] {
        let err = parse_doc(bad).unwrap_err();
        println!("{:?}\n  -> {err}", bad.replace('\n', " / "));
    }
}
