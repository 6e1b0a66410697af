function Queue() {}
Queue.prototype.push = function(item) {
  (this.items || (this.items = [])).push(item);
};
module.exports = Queue;
