//! The degree-d construction: every form of degree d is a sum of d powers
//! of rational linear forms.

use binlength::binform::BinaryForm;
use binlength::exactnum::FieldDescriptor;
use binlength::oracle::expand_representation;
use binlength::special::universal_sylvester_construction;

fn main() -> binlength::error::Result<()> {
    let forms = [
        BinaryForm::from_ints(&[0, 1, 0, 0]),
        BinaryForm::from_ints(&[2, -1, 0, 5, 1]),
        BinaryForm::from_ints(&[0, 0, 0, 1, 0, 0]),
    ];
    for f in &forms {
        let (h, rep) = universal_sylvester_construction(f, FieldDescriptor::Q)?;
        println!("f = {f}");
        println!("  split kernel member {h}");
        println!("  {rep}");
        assert_eq!(rep.len(), f.degree());
        assert_eq!(&expand_representation(&rep)?, f);
    }
    Ok(())
}
