class Exec06 {
    static int countdown(int start) {
        int steps = 0;
        for (int k = start; k > 0; k--) {
            steps++;
        }
        return steps;
    }

    static String parity(int n) {
        if (n % 2 == 0) {
            return "even";
        } else {
            return "odd";
        }
    }

    public static void main(String[] args) {
        System.out.println(countdown(4));
        System.out.println(parity(countdown(4)));
        System.out.println(parity(7));
    }
}
