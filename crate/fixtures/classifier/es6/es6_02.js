export default class Stack {
  constructor() { this.items = []; }
}
