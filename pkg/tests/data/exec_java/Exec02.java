class Exec02 {
    static String classify(int n) {
        if (n == 0) {
            return "zero";
        } else {
            if (n < 10) {
                return "small";
            }
        }
        return "large";
    }

    public static void main(String[] args) {
        System.out.println(classify(0));
        System.out.println(classify(4));
        System.out.println(classify(40));
    }
}
