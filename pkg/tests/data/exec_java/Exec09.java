class Exec09 {
    static String repeat(String word, int times) {
        // join copies together
        String out = "";
        int n;
        for (n = 0; n < times; n++) {
            out += word;
        }
        return out;
    }

    public static void main(String[] args) {
        System.out.println(repeat("ab", 3));
        System.out.println(repeat("x", 0));
        System.out.println(repeat("z", 1));
    }
}
