fn main() {
    println!("derand");
}
