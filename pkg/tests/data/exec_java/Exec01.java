class Exec01 {
    static int tally(int limit) {
        int total = 0;
        int i;
        for (i = 0; i < limit; i++) {
            total += i;
        }
        return total;
    }

    public static void main(String[] args) {
        int count = tally(6);
        System.out.println(count);
        if (count < 20) System.out.println("low");
        else System.out.println("high");
    }
}
