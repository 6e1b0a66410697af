export const PI = 3.14159;
export let counter = 0;
